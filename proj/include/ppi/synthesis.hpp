#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppi/matrix_ops.hpp"

namespace ppi {

// The three attainability conditions for an (index, ascent) pair on n-by-n
// matrices: A means j = k <= n-1, B means j <= k-1 and j+k <= n-1, C means
// j <= k-2 and j+k = n.
enum class Condition { A, B, C, None };

const char* to_string(Condition c);

struct FeasibilityVerdict {
  bool feasible = false;
  Condition condition = Condition::None;
  int j = 0;
  int k = 0;
  int n = 0;
};

// Evaluates the conditions in order A, B, C and reports the first match.
FeasibilityVerdict feasible(int j, int k, int n);

// Pass/fail breakdown of all three conditions, for diagnostics.
std::string describe_conditions(int j, int k, int n);

// All feasible (j, k) with 0 <= j, k <= n, sorted by (j, k).
std::vector<FeasibilityVerdict> feasible_pairs(int n);

enum class WitnessTag { A0, A_SN, B_I, B_II, B_III, C_I, C_II };

const char* to_string(WitnessTag t);

struct WitnessRecipe {
  WitnessTag tag;
  std::string blocks;  // constituent-block description
};

// q-by-q nilpotent block with ones on the superdiagonal.
Matrix jordan_block(int q);

// Upper-triangular contraction with the given diagonal (all |lambda| < 1)
// and rank(I - A*A) = 1: entry (i, j) above the diagonal is
// sqrt(1-|l_i|^2) * prod_{t=i+1}^{j-1} (-conj(l_t)) * sqrt(1-|l_j|^2).
Matrix sn_matrix(const std::vector<Scalar>& eigenvalues);

// Deterministic n-by-n witness with index j and ascent k, built by case
// dispatch on the matched feasibility condition. Throws PreconditionError
// for infeasible triples.
std::pair<Matrix, WitnessRecipe> synthesize(int j, int k, int n);

}  // namespace ppi
