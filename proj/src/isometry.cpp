#include "ppi/isometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <sstream>

namespace ppi {

std::string to_string(const IsometryIndex& idx) {
  return idx.infinite ? "inf" : std::to_string(idx.value);
}

bool is_partial_isometry(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "is_partial_isometry");
  require_finite(a, "is_partial_isometry");
  return is_projection(a.adjoint() * a, cfg);
}

namespace {

struct PowerScan {
  std::vector<bool> per_power;  // l = 1..ascent+1
  IsometryIndex p;
};

// Tests A^1..A^{a+1}. A prefix of a+1 successes is conclusive for all
// powers, so the index is infinite in that case.
PowerScan scan_powers(const Matrix& a, int asc, const ToleranceConfig& cfg) {
  PowerScan scan;
  Matrix pw = a;
  int prefix = 0;
  bool growing = true;
  for (int l = 1; l <= asc + 1; ++l) {
    if (l > 1) pw = pw * a;
    const bool ok = is_partial_isometry(pw, cfg);
    scan.per_power.push_back(ok);
    if (growing && ok) {
      ++prefix;
    } else {
      growing = false;
    }
  }
  scan.p = (prefix == asc + 1) ? IsometryIndex::inf() : IsometryIndex::finite(prefix);
  return scan;
}

std::string singular_values_of_power(const Matrix& a, int l) {
  Matrix pw = a;
  for (int i = 1; i < l; ++i) pw = pw * a;
  Eigen::JacobiSVD<Matrix> svd(pw);
  std::ostringstream out;
  out << "sigma(A^" << l << ") = [";
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (i > 0) out << ", ";
    out << svd.singularValues()(i);
  }
  out << "]";
  return out.str();
}

}  // namespace

IsometryIndex ppi_index(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "ppi_index");
  require_finite(a, "ppi_index");
  const KernelChain chain = kernel_chain(a, cfg);
  return scan_powers(a, chain.ascent, cfg).p;
}

IndexReport analyze(const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "analyze");
  require_finite(a, "analyze");
  const int n = static_cast<int>(a.rows());
  const KernelChain chain = kernel_chain(a, cfg);
  const PowerScan scan = scan_powers(a, chain.ascent, cfg);

  IndexReport report;
  report.n = n;
  report.a = chain.ascent;
  report.p = scan.p;
  report.per_power = scan.per_power;
  report.geo0 = chain.nullities.size() > 1 ? chain.nullities[1] : 0;
  report.alg0 = chain.nullities.back();

  if (!report.p.infinite) {
    const int p = report.p.value;
    const int k = report.a;
    std::string violated;
    if (p > std::min(k, n - 1)) {
      violated = "index bound: p <= min(a, n-1)";
    } else if (p + k > n && p != k) {
      violated = "p + a > n forces p = a";
    } else if (p + k == n && p != k && p > k - 2) {
      violated = "p + a = n forces p = a or p <= a - 2";
    }
    if (!violated.empty()) {
      std::ostringstream msg;
      msg << "analyze: " << violated << " (n=" << n << ", p=" << p << ", a=" << k << "); "
          << singular_values_of_power(a, std::min(p + 1, k + 1));
      throw NumericError(msg.str());
    }
  }
  return report;
}

namespace {

// Rotate each column so its largest-magnitude entry is real positive;
// keeps basis choices stable across runs and platforms.
void canonicalize_columns(Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    Eigen::Index pivot = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double mag = std::abs(m(r, c));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    const Scalar z = m(pivot, c);
    if (std::abs(z) > 0.0) m.col(c) *= std::conj(z) / std::abs(z);
  }
}

}  // namespace

BlockForm canonical_form(const Matrix& a, int j, const ToleranceConfig& cfg) {
  require_square(a, "canonical_form");
  require_finite(a, "canonical_form");
  const int n = static_cast<int>(a.rows());

  const KernelChain chain = kernel_chain(a, cfg);
  if (j < 1 || j > chain.ascent) {
    throw std::invalid_argument("canonical_form: j = " + std::to_string(j) +
                                " outside [1, ascent = " + std::to_string(chain.ascent) + "]");
  }
  {
    Matrix pw = a;
    for (int l = 1; l <= j; ++l) {
      if (l > 1) pw = pw * a;
      if (!is_partial_isometry(pw, cfg)) {
        throw PreconditionError("canonical_form: A^" + std::to_string(l) +
                                " is not a partial isometry");
      }
    }
  }

  BlockForm form;
  for (int l = 1; l <= j; ++l) {
    form.dims.push_back(chain.nullities[l] - chain.nullities[l - 1]);
  }
  const int m = n - chain.nullities[j];
  form.dims.push_back(m);

  // Columns of Q: basis of ker A, then of each (ker A^l) minus the previous
  // kernel, then of the orthogonal complement of ker A^j. Kernel bases come
  // from right singular vectors of the explicitly formed powers.
  form.q.resize(n, n);
  int filled = 0;
  Matrix pw = a;
  for (int l = 1; l <= j; ++l) {
    if (l > 1) pw = pw * a;
    Eigen::JacobiSVD<Matrix> svd(pw, Eigen::ComputeFullV);
    const int nul = chain.nullities[l];
    const int n_l = form.dims[l - 1];
    const Matrix kernel_basis = svd.matrixV().rightCols(nul);
    Matrix v_l;
    if (l == 1) {
      v_l = kernel_basis;
    } else {
      // Project out the previously chosen columns; the remainder has n_l
      // singular values near 1 and the rest near 0.
      const auto prev = form.q.leftCols(filled);
      const Matrix residual = kernel_basis - prev * (prev.adjoint() * kernel_basis);
      Eigen::JacobiSVD<Matrix> complement(residual, Eigen::ComputeThinU);
      v_l = complement.matrixU().leftCols(n_l);
    }
    canonicalize_columns(v_l);
    form.q.middleCols(filled, n_l) = v_l;
    filled += n_l;
    if (l == j) {
      Matrix w = svd.matrixV().leftCols(m);
      canonicalize_columns(w);
      form.q.rightCols(m) = w;
    }
  }

  const Matrix t = form.q.adjoint() * a * form.q;
  std::vector<int> offsets(form.dims.size() + 1, 0);
  for (std::size_t i = 0; i < form.dims.size(); ++i) offsets[i + 1] = offsets[i] + form.dims[i];
  for (int l = 1; l <= j - 1; ++l) {
    form.superdiag_blocks.push_back(
        t.block(offsets[l - 1], offsets[l], form.dims[l - 1], form.dims[l]));
  }
  form.b = t.block(offsets[j - 1], offsets[j], form.dims[j - 1], m);
  form.c = t.block(offsets[j], offsets[j], m, m);

  const BlockFormCheck check = verify_block_form(form, a, cfg);
  if (!check.ok) {
    std::ostringstream msg;
    msg << "canonical_form: reconstructed form violates block invariants:";
    for (const auto& v : check.violations) msg << "\n  " << v;
    throw NumericError(msg.str());
  }
  return form;
}

BlockFormCheck verify_block_form(const BlockForm& f, const Matrix& a, const ToleranceConfig& cfg) {
  require_square(a, "verify_block_form");
  require_finite(a, "verify_block_form");
  const int n = static_cast<int>(a.rows());

  if (f.dims.size() < 2) {
    throw std::invalid_argument("verify_block_form: dims must list n_1..n_j and m");
  }
  const int j = static_cast<int>(f.dims.size()) - 1;
  const int m = f.dims.back();
  int total = 0;
  for (int d : f.dims) {
    if (d < 0) throw std::invalid_argument("verify_block_form: negative block size");
    total += d;
  }
  if (total != n || f.q.rows() != n || f.q.cols() != n) {
    throw std::invalid_argument("verify_block_form: dims/Q do not match the matrix size");
  }
  if (static_cast<int>(f.superdiag_blocks.size()) != j - 1) {
    throw std::invalid_argument("verify_block_form: expected j-1 superdiagonal blocks");
  }
  for (int l = 1; l <= j - 1; ++l) {
    const Matrix& blk = f.superdiag_blocks[l - 1];
    if (blk.rows() != f.dims[l - 1] || blk.cols() != f.dims[l]) {
      throw std::invalid_argument("verify_block_form: superdiagonal block " + std::to_string(l) +
                                  " has wrong shape");
    }
  }
  if (f.b.rows() != f.dims[j - 1] || f.b.cols() != m || f.c.rows() != m || f.c.cols() != m) {
    throw std::invalid_argument("verify_block_form: B/C block shape mismatch");
  }

  BlockFormCheck check;
  auto record = [&check](double residual, const std::string& what, double tol) {
    check.max_residual = std::max(check.max_residual, residual);
    if (residual > tol) {
      std::ostringstream out;
      out << what << " (residual " << residual << ")";
      check.violations.push_back(out.str());
      check.ok = false;
    }
  };

  record(max_abs(f.q.adjoint() * f.q - Matrix::Identity(n, n)), "Q is not unitary", cfg.proj_tol);

  for (int l = 1; l <= j - 1; ++l) {
    const Matrix& blk = f.superdiag_blocks[l - 1];
    const Matrix gram = blk.adjoint() * blk;
    record(max_abs(gram - Matrix::Identity(f.dims[l], f.dims[l])),
           "A_" + std::to_string(l) + " is not isometric", cfg.proj_tol);
  }

  record(max_abs(f.b.adjoint() * f.b + f.c.adjoint() * f.c - Matrix::Identity(m, m)),
         "B*B + C*C differs from the identity", cfg.proj_tol);

  std::vector<int> offsets(f.dims.size() + 1, 0);
  for (std::size_t i = 0; i < f.dims.size(); ++i) offsets[i + 1] = offsets[i] + f.dims[i];
  const Matrix t = f.q.adjoint() * a * f.q;
  for (int r = 1; r <= j + 1; ++r) {
    for (int c = 1; c <= j + 1; ++c) {
      const Matrix sub = t.block(offsets[r - 1], offsets[c - 1], f.dims[r - 1], f.dims[c - 1]);
      Matrix expected = Matrix::Zero(sub.rows(), sub.cols());
      if (c == r + 1 && r <= j - 1) {
        expected = f.superdiag_blocks[r - 1];
      } else if (r == j && c == j + 1) {
        expected = f.b;
      } else if (r == j + 1 && c == j + 1) {
        expected = f.c;
      }
      record(max_abs(sub - expected),
             "Q*AQ block (" + std::to_string(r) + "," + std::to_string(c) +
                 ") deviates from the block layout",
             cfg.proj_tol);
    }
  }

  for (int l = 0; l + 1 < j; ++l) {
    if (f.dims[l] < f.dims[l + 1]) {
      check.violations.push_back("block sizes n_l are not non-increasing");
      check.ok = false;
      break;
    }
  }
  if (j >= 1 && f.dims[j - 1] < 1) {
    check.violations.push_back("n_j must be at least 1");
    check.ok = false;
  }

  const int rank_pow = rank(power(a, j), cfg);
  if (rank_pow != m) {
    check.violations.push_back("m = " + std::to_string(m) + " differs from rank(A^j) = " +
                               std::to_string(rank_pow));
    check.ok = false;
  }

  return check;
}

}  // namespace ppi
