#pragma once

#include <vector>

#include "ppi/matrix_ops.hpp"

namespace ppi {

// Nullities of the kernel chain ker A^0 <= ker A <= ker A^2 <= ... up to the
// first power where the chain stabilizes. nullities[l] = nullity(A^l) for
// l = 0..ascent; the sequence starts at 0 and is strictly increasing until
// the final entry.
struct KernelChain {
  std::vector<int> nullities;
  int ascent = 0;

  // n_l = nullities[l] - nullities[l-1]; non-increasing in l.
  std::vector<int> differences() const;
};

KernelChain kernel_chain(const Matrix& a, const ToleranceConfig& cfg = {});

// Smallest k >= 0 with nullity(A^k) = nullity(A^{k+1}); at most n.
int ascent(const Matrix& a, const ToleranceConfig& cfg = {});

// nullity(A).
int geometric_multiplicity_zero(const Matrix& a, const ToleranceConfig& cfg = {});

// Stabilized kernel dimension nullity(A^n).
int algebraic_multiplicity_zero(const Matrix& a, const ToleranceConfig& cfg = {});

}  // namespace ppi
