#pragma once

// Seeded random fixtures shared by the unit and acceptance suites. All
// generators are deterministic functions of the passed-in engine.

#include <Eigen/QR>
#include <Eigen/SVD>
#include <random>
#include <vector>

#include "ppi/isometry.hpp"
#include "ppi/matrix_ops.hpp"
#include "ppi/synthesis.hpp"

namespace testgen {

using ppi::Matrix;
using ppi::Scalar;
using Rng = std::mt19937_64;

inline Matrix random_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      g(r, c) = Scalar(normal(rng), normal(rng));
    }
  }
  return g;
}

inline Matrix random_unitary(int n, Rng& rng) {
  const Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    const Scalar d = r(i, i);
    q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline Matrix random_contraction(int n, Rng& rng) {
  std::uniform_real_distribution<double> target(0.3, 0.95);
  Matrix g = random_gaussian(n, n, rng);
  Eigen::JacobiSVD<Matrix> svd(g);
  return g * (target(rng) / svd.singularValues()(0));
}

inline Matrix random_partial_isometry(int n, int rank, Rng& rng) {
  const Matrix u = random_unitary(n, rng);
  const Matrix v = random_unitary(n, rng);
  return u.leftCols(rank) * v.leftCols(rank).adjoint();
}

inline Matrix random_pi_product(int n, Rng& rng) {
  std::uniform_int_distribution<int> factors(2, 3);
  std::uniform_int_distribution<int> rank(std::max(1, n - 2), n);
  Matrix a = Matrix::Identity(n, n);
  const int count = factors(rng);
  for (int i = 0; i < count; ++i) {
    a = a * random_partial_isometry(n, rank(rng), rng);
  }
  return a;
}

inline Matrix random_jordan_sn_sum(int n, Rng& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_real_distribution<double> modulus(0.2, 0.8);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> zero_prob(0.0, 1.0);
  Matrix a(0, 0);
  int remaining = n;
  while (remaining > 0) {
    std::uniform_int_distribution<int> size(1, std::min(remaining, 4));
    const int q = size(rng);
    Matrix block;
    if (coin(rng) == 0) {
      block = ppi::jordan_block(q);
    } else {
      std::vector<Scalar> eigs;
      for (int i = 0; i < q; ++i) {
        if (zero_prob(rng) < 0.4) {
          eigs.push_back(Scalar(0.0));
        } else {
          eigs.push_back(std::polar(modulus(rng), angle(rng)));
        }
      }
      block = ppi::sn_matrix(eigs);
    }
    a = a.size() == 0 ? block : ppi::direct_sum(a, block);
    remaining -= q;
  }
  return a;
}

// The mixture families named by the completeness checks: contractions,
// partial-isometry products, Jordan/S_n direct sums.
inline Matrix random_analysis_mixture(int trial, int n, Rng& rng) {
  switch (trial % 3) {
    case 0: return random_contraction(n, rng);
    case 1: return random_pi_product(n, rng);
    default: return random_jordan_sn_sum(n, rng);
  }
}

// U (+) J_{k_1} (+) ... (+) J_{k_m} with unitary U: every power is a
// partial isometry.
inline Matrix random_infinite_witness(int n, Rng& rng) {
  std::uniform_int_distribution<int> head(1, n);
  const int u_size = head(rng);
  Matrix a = random_unitary(u_size, rng);
  int remaining = n - u_size;
  while (remaining > 0) {
    std::uniform_int_distribution<int> size(1, remaining);
    const int q = size(rng);
    a = ppi::direct_sum(a, ppi::jordan_block(q));
    remaining -= q;
  }
  return a;
}

struct BlockFormSample {
  Matrix a;        // assembled block-layout matrix
  int j = 0;       // chain length
  Matrix tail;     // the C block
};

// Random matrix in the block layout: isometric superdiagonal blocks on
// non-increasing space sizes, then (B; C) cut from the first m columns of a
// random unitary so that B*B + C*C = I_m.
inline BlockFormSample random_block_form_matrix(Rng& rng, int max_j = 4) {
  std::uniform_int_distribution<int> chain_len(1, max_j);
  std::uniform_int_distribution<int> first(1, 3);
  std::uniform_int_distribution<int> tail_size(1, 3);
  const int j = chain_len(rng);
  std::vector<int> dims;
  dims.push_back(first(rng));
  for (int l = 1; l < j; ++l) {
    std::uniform_int_distribution<int> next(1, dims.back());
    dims.push_back(next(rng));
  }
  const int m = tail_size(rng);

  int n = m;
  for (int d : dims) n += d;
  std::vector<int> offsets(1, 0);
  for (int d : dims) offsets.push_back(offsets.back() + d);

  Matrix a = Matrix::Zero(n, n);
  for (int l = 0; l + 1 < j; ++l) {
    a.block(offsets[l], offsets[l + 1], dims[l], dims[l + 1]) =
        random_unitary(dims[l], rng).leftCols(dims[l + 1]);
  }
  const Matrix stacked = random_unitary(dims.back() + m, rng).leftCols(m);
  a.block(offsets[j - 1], offsets[j], dims[j - 1], m) = stacked.topRows(dims.back());
  a.block(offsets[j], offsets[j], m, m) = stacked.bottomRows(m);

  return {a, j, stacked.bottomRows(m)};
}

// j + p with the convention j + inf = inf.
inline ppi::IsometryIndex shift_index(int j, const ppi::IsometryIndex& p) {
  return p.infinite ? ppi::IsometryIndex::inf() : ppi::IsometryIndex::finite(j + p.value);
}

}  // namespace testgen
