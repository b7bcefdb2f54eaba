#include "ppi/matrix_ops.hpp"

#include <Eigen/SVD>
#include <string>

namespace ppi {

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": expected square matrix, got " +
                                std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

int rank(const Matrix& a, const ToleranceConfig& cfg) {
  require_finite(a, "rank");
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sigma = svd.singularValues();
  const double cutoff = cfg.rank_tol * std::max(1.0, sigma.size() > 0 ? sigma(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

int nullity(const Matrix& a, const ToleranceConfig& cfg) {
  return static_cast<int>(a.cols()) - rank(a, cfg);
}

bool is_projection(const Matrix& p, const ToleranceConfig& cfg) {
  require_square(p, "is_projection");
  require_finite(p, "is_projection");
  if (p.size() == 0) return true;
  const double herm = max_abs(p - p.adjoint());
  const double idem = max_abs(p * p - p);
  return std::max(herm, idem) <= cfg.proj_tol;
}

bool is_unitary(const Matrix& u, const ToleranceConfig& cfg) {
  require_square(u, "is_unitary");
  require_finite(u, "is_unitary");
  if (u.size() == 0) return true;
  const Matrix gram = u.adjoint() * u;
  return max_abs(gram - Matrix::Identity(u.cols(), u.cols())) <= cfg.proj_tol;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("multiply: dimension mismatch " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
  return a * b;
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

Matrix direct_sum(const Matrix& a, const Matrix& b) {
  Matrix s = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  s.topLeftCorner(a.rows(), a.cols()) = a;
  s.bottomRightCorner(b.rows(), b.cols()) = b;
  return s;
}

Matrix power(const Matrix& a, int exponent) {
  require_square(a, "power");
  if (exponent < 0) throw std::invalid_argument("power: negative exponent");
  Matrix p = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < exponent; ++i) p = p * a;
  return p;
}

}  // namespace ppi
