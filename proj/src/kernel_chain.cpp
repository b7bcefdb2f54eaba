#include "ppi/kernel_chain.hpp"

namespace ppi {

std::vector<int> KernelChain::differences() const {
  std::vector<int> d;
  for (std::size_t l = 1; l < nullities.size(); ++l) {
    d.push_back(nullities[l] - nullities[l - 1]);
  }
  return d;
}

KernelChain kernel_chain(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "kernel_chain");
  require_finite(a, "kernel_chain");
  const int n = static_cast<int>(a.rows());

  KernelChain chain;
  chain.nullities.push_back(0);
  Matrix p = a;
  for (int l = 1; l <= n + 1; ++l) {
    const int nul = nullity(p, cfg);
    if (nul == chain.nullities.back()) {
      chain.ascent = l - 1;
      return chain;
    }
    chain.nullities.push_back(nul);
    p = p * a;
  }
  // Unreachable for consistent rank decisions: the nullity can strictly
  // increase at most n times.
  throw NumericError("kernel_chain: nullity failed to stabilize within n+1 powers");
}

int ascent(const Matrix& a, const ToleranceConfig& cfg) { return kernel_chain(a, cfg).ascent; }

int geometric_multiplicity_zero(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "geometric_multiplicity_zero");
  return nullity(a, cfg);
}

int algebraic_multiplicity_zero(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "algebraic_multiplicity_zero");
  return kernel_chain(a, cfg).nullities.back();
}

}  // namespace ppi
