#pragma once

#include <string>
#include <vector>

#include "ppi/kernel_chain.hpp"
#include "ppi/matrix_ops.hpp"

namespace ppi {

// Power partial isometry index: a nonnegative integer, or infinite when
// every power of the matrix is a partial isometry.
struct IsometryIndex {
  int value = 0;  // meaningful only when infinite is false
  bool infinite = false;

  static IsometryIndex finite(int v) { return {v, false}; }
  static IsometryIndex inf() { return {0, true}; }

  friend bool operator==(const IsometryIndex& lhs, const IsometryIndex& rhs) {
    if (lhs.infinite || rhs.infinite) return lhs.infinite == rhs.infinite;
    return lhs.value == rhs.value;
  }
};

std::string to_string(const IsometryIndex& idx);

struct IndexReport {
  int n = 0;
  IsometryIndex p;
  int a = 0;
  std::vector<bool> per_power;  // is A^l a partial isometry, l = 1..a+1
  int geo0 = 0;                 // geometric multiplicity of eigenvalue 0
  int alg0 = 0;                 // algebraic multiplicity of eigenvalue 0
};

// A*A is an orthogonal projection.
bool is_partial_isometry(const Matrix& a, const ToleranceConfig& cfg = {});

// Tests A^1..A^{a+1} in order and counts consecutive partial isometries
// from l = 1. If every tested power passes, all powers are partial
// isometries and the index is infinite.
IsometryIndex ppi_index(const Matrix& a, const ToleranceConfig& cfg = {});

// Bundles ppi_index, ascent and the multiplicities of the eigenvalue 0.
// Throws NumericError if the computed report violates the index/ascent
// constraints (possible only through tolerance misclassification).
IndexReport analyze(const Matrix& a, const ToleranceConfig& cfg = {});

// Block decomposition of a matrix whose first j powers are partial
// isometries: Q*AQ is zero except for isometric superdiagonal blocks
// A_1..A_{j-1}, the coupling block B and the tail block C, on a space split
// sized n_1, ..., n_j, m.
struct BlockForm {
  Matrix q;                             // unitary change of basis
  std::vector<int> dims;                // n_1, ..., n_j, m
  std::vector<Matrix> superdiag_blocks; // A_l of size n_l x n_{l+1}
  Matrix b;                             // n_j x m
  Matrix c;                             // m x m
};

// Builds the block form from orthonormal bases of the kernel chain:
// ker A, then each (ker A^l) minus the previous kernel, then the
// orthogonal complement of ker A^j. Requires 1 <= j <= ascent(A) and
// A^1..A^j all partial isometries.
BlockForm canonical_form(const Matrix& a, int j, const ToleranceConfig& cfg = {});

struct BlockFormCheck {
  bool ok = true;
  double max_residual = 0.0;
  std::vector<std::string> violations;
};

// Checks every block-form invariant against A within proj_tol and reports
// each violation with its residual.
BlockFormCheck verify_block_form(const BlockForm& f, const Matrix& a,
                                 const ToleranceConfig& cfg = {});

}  // namespace ppi
