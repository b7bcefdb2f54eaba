#include "ppi/synthesis.hpp"

#include <cmath>
#include <sstream>

#include "ppi/errors.hpp"

namespace ppi {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::C: return "C";
    case Condition::None: return "NONE";
  }
  return "NONE";
}

const char* to_string(WitnessTag t) {
  switch (t) {
    case WitnessTag::A0: return "A0";
    case WitnessTag::A_SN: return "A_SN";
    case WitnessTag::B_I: return "B_I";
    case WitnessTag::B_II: return "B_II";
    case WitnessTag::B_III: return "B_III";
    case WitnessTag::C_I: return "C_I";
    case WitnessTag::C_II: return "C_II";
  }
  return "?";
}

namespace {

void require_triple(int j, int k, int n, const char* what) {
  if (j < 0 || k < 0 || n < 1) {
    throw std::invalid_argument(std::string(what) + ": need j >= 0, k >= 0, n >= 1");
  }
}

}  // namespace

FeasibilityVerdict feasible(int j, int k, int n) {
  require_triple(j, k, n, "feasible");
  FeasibilityVerdict v;
  v.j = j;
  v.k = k;
  v.n = n;
  if (j == k && k <= n - 1) {
    v.condition = Condition::A;
  } else if (j <= k - 1 && j + k <= n - 1) {
    v.condition = Condition::B;
  } else if (j <= k - 2 && j + k == n) {
    v.condition = Condition::C;
  } else {
    v.condition = Condition::None;
  }
  v.feasible = v.condition != Condition::None;
  return v;
}

std::string describe_conditions(int j, int k, int n) {
  require_triple(j, k, n, "describe_conditions");
  std::ostringstream out;
  out << "(a) j=k<=n-1: " << ((j == k && k <= n - 1) ? "holds" : "fails");
  out << "; (b) j<=k-1 and j+k<=n-1: " << ((j <= k - 1 && j + k <= n - 1) ? "holds" : "fails");
  out << "; (c) j<=k-2 and j+k=n: " << ((j <= k - 2 && j + k == n) ? "holds" : "fails");
  return out.str();
}

std::vector<FeasibilityVerdict> feasible_pairs(int n) {
  if (n < 1) throw std::invalid_argument("feasible_pairs: n >= 1 required");
  std::vector<FeasibilityVerdict> pairs;
  for (int j = 0; j <= n; ++j) {
    for (int k = 0; k <= n; ++k) {
      FeasibilityVerdict v = feasible(j, k, n);
      if (v.feasible) pairs.push_back(v);
    }
  }
  return pairs;
}

Matrix jordan_block(int q) {
  if (q < 1) throw std::invalid_argument("jordan_block: q >= 1 required");
  Matrix j = Matrix::Zero(q, q);
  for (int i = 0; i + 1 < q; ++i) j(i, i + 1) = 1.0;
  return j;
}

Matrix sn_matrix(const std::vector<Scalar>& eigenvalues) {
  if (eigenvalues.empty()) throw std::invalid_argument("sn_matrix: empty eigenvalue list");
  const int n = static_cast<int>(eigenvalues.size());
  std::vector<double> defect(n);  // sqrt(1 - |lambda|^2)
  for (int i = 0; i < n; ++i) {
    const double mod = std::abs(eigenvalues[i]);
    if (mod >= 1.0) {
      throw std::invalid_argument("sn_matrix: eigenvalue modulus must be < 1");
    }
    defect[i] = std::sqrt(1.0 - mod * mod);
  }
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = eigenvalues[i];
    Scalar chain = 1.0;
    for (int c = i + 1; c < n; ++c) {
      a(i, c) = defect[i] * chain * defect[c];
      chain *= -std::conj(eigenvalues[c]);
    }
  }
  return a;
}

namespace {

std::vector<Scalar> zeros_then_halves(int zeros, int halves) {
  std::vector<Scalar> eigs(zeros, Scalar(0.0));
  eigs.insert(eigs.end(), halves, Scalar(0.5));
  return eigs;
}

std::string sn_description(int zeros, int halves) {
  std::ostringstream out;
  out << "S_" << (zeros + halves) << "(0^" << zeros << ", (1/2)^" << halves << ")";
  return out.str();
}

// j two-dimensional chain spaces coupled into the tail block: identity
// superdiagonal blocks, then B into the tail, then C on the tail.
Matrix chain_witness(int j, const Matrix& b, const Matrix& c) {
  const int m = static_cast<int>(c.rows());
  const int n = 2 * j + m;
  Matrix a = Matrix::Zero(n, n);
  for (int l = 0; l + 1 < j; ++l) {
    a.block(2 * l, 2 * (l + 1), 2, 2) = Matrix::Identity(2, 2);
  }
  if (j >= 1) a.block(2 * (j - 1), 2 * j, 2, m) = b;
  a.block(2 * j, 2 * j, m, m) = c;
  return a;
}

}  // namespace

std::pair<Matrix, WitnessRecipe> synthesize(int j, int k, int n) {
  const FeasibilityVerdict verdict = feasible(j, k, n);
  if (!verdict.feasible) {
    throw PreconditionError("synthesize: no " + std::to_string(n) + "x" + std::to_string(n) +
                            " matrix has index " + std::to_string(j) + " and ascent " +
                            std::to_string(k) + "; " + describe_conditions(j, k, n));
  }

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  switch (verdict.condition) {
    case Condition::A: {
      if (j == 0) {
        std::ostringstream desc;
        desc << "(1/2) I_" << n;
        return {0.5 * Matrix::Identity(n, n), {WitnessTag::A0, desc.str()}};
      }
      return {sn_matrix(zeros_then_halves(k, n - k)),
              {WitnessTag::A_SN, sn_description(k, n - k)}};
    }
    case Condition::B: {
      if (j == 0 && k == n - 1) {
        Matrix half(1, 1);
        half(0, 0) = 0.5;
        return {direct_sum(half, jordan_block(n - 1)),
                {WitnessTag::B_I, "[1/2] (+) J_" + std::to_string(n - 1)}};
      }
      if (j + k == n - 1) {
        const Matrix head = sn_matrix(zeros_then_halves(j, 1));
        return {direct_sum(head, jordan_block(k)),
                {WitnessTag::B_II, sn_description(j, 1) + " (+) J_" + std::to_string(k)}};
      }
      // j + k <= n - 2
      const Matrix head = sn_matrix(zeros_then_halves(j, 1));
      const Matrix tail = sn_matrix(zeros_then_halves(k, n - j - 1 - k));
      return {direct_sum(head, tail),
              {WitnessTag::B_III,
               sn_description(j, 1) + " (+) " + sn_description(k, n - j - 1 - k)}};
    }
    case Condition::C: {
      const int m = k - j;
      if (m == 2) {
        Matrix b = Matrix::Zero(2, 2);
        b(0, 0) = 1.0;
        b(1, 1) = inv_sqrt2;
        Matrix c = Matrix::Zero(2, 2);
        c(0, 1) = inv_sqrt2;
        std::ostringstream desc;
        desc << "chain of " << j << " I_2 blocks, B = [[1,0],[0,1/sqrt2]], "
             << "C = [[0,1/sqrt2],[0,0]]";
        return {chain_witness(j, b, c), {WitnessTag::C_I, desc.str()}};
      }
      // m >= 3
      Matrix b = Matrix::Zero(2, m);
      b(0, 0) = 1.0;
      b(1, 1) = inv_sqrt2;
      b(1, m - 1) = 0.5;
      Matrix c = Matrix::Zero(m, m);
      c(0, 1) = -inv_sqrt2;
      c(0, m - 1) = 0.5;
      for (int i = 1; i <= m - 3; ++i) c(i, i + 1) = 1.0;
      c(m - 2, m - 1) = inv_sqrt2;
      std::ostringstream desc;
      desc << "chain of " << j << " I_2 blocks, coupling B (2x" << m << "), tail C (" << m << "x"
           << m << ")";
      return {chain_witness(j, b, c), {WitnessTag::C_II, desc.str()}};
    }
    case Condition::None: break;
  }
  throw std::logic_error("synthesize: unreachable");
}

}  // namespace ppi
