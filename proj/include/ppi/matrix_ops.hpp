#pragma once

#include <Eigen/Dense>
#include <complex>

#include "ppi/errors.hpp"

namespace ppi {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Numeric policy for every discrete decision made on a matrix. Singular
// values at or below rank_tol * max(1, sigma_max) count as zero; predicate
// deviations (projection, unitarity, block residuals) are measured in the
// entrywise max norm against proj_tol.
struct ToleranceConfig {
  double rank_tol = 1e-9;
  double proj_tol = 1e-8;
};

// Entrywise max norm; 0 for an empty matrix.
double max_abs(const Matrix& m);

void require_finite(const Matrix& m, const char* what);
void require_square(const Matrix& m, const char* what);

// Number of singular values above the relative cutoff.
int rank(const Matrix& a, const ToleranceConfig& cfg = {});

// cols(a) - rank(a).
int nullity(const Matrix& a, const ToleranceConfig& cfg = {});

// max(|P - P*|, |P^2 - P|) <= proj_tol.
bool is_projection(const Matrix& p, const ToleranceConfig& cfg = {});

// |U*U - I| <= proj_tol.
bool is_unitary(const Matrix& u, const ToleranceConfig& cfg = {});

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
Matrix direct_sum(const Matrix& a, const Matrix& b);

// Repeated multiplication; power(a, 0) is the identity.
Matrix power(const Matrix& a, int exponent);

}  // namespace ppi
