#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "halfgain/errors.hpp"
#include "halfgain/polynomial.hpp"

namespace halfgain {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

inline constexpr int kMaxCharpolyDim = 32;
inline constexpr int kMaxExpmDim = 64;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (m.rows() != m.cols())
    throw DimensionError(std::string(what) + ": expected a square matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& m, const char* what) {
  if (!m.allFinite()) throw ParameterError(std::string(what) + ": non-finite entry");
}

/// Faddeev–LeVerrier recursion. Alongside det(λI − A) it yields the
/// coefficient matrices of adj(λI − A) = Σ_k adjugate[k-1] λ^(n−k).
template <typename Scalar>
struct Leverrier {
  Polynomial<Scalar> charpoly;
  std::vector<Matrix<Scalar>> adjugate;
};

template <typename Derived>
Leverrier<typename Derived::Scalar> faddeev_leverrier(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  require_square(m, "charpoly");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxCharpolyDim) throw DimensionError("charpoly: dimension exceeds " + std::to_string(kMaxCharpolyDim));

  const Matrix<Scalar> a = m;
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
  c[0] = Scalar(1);
  std::vector<Matrix<Scalar>> adj;
  adj.reserve(static_cast<std::size_t>(n));
  Matrix<Scalar> mk = Matrix<Scalar>::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = a * mk;
    mk.diagonal().array() += c[static_cast<std::size_t>(k - 1)];
    adj.push_back(mk);
    c[static_cast<std::size_t>(k)] = -(a * mk).trace() / Scalar(k);
  }
  return {Polynomial<Scalar>(std::move(c)), std::move(adj)};
}

/// det(λI − m), monic of degree m.rows().
template <typename Derived>
Polynomial<typename Derived::Scalar> charpoly(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() == 0 && m.cols() == 0) return Polynomial<typename Derived::Scalar>{1};
  return faddeev_leverrier(m).charpoly;
}

/// e^(m t) by scaling and squaring with a Padé approximant.
template <typename Derived>
Matrix<typename Derived::Scalar> expm(const Eigen::MatrixBase<Derived>& m, typename Derived::Scalar t) {
  require_square(m, "expm");
  if (m.rows() > kMaxExpmDim) throw DimensionError("expm: dimension exceeds " + std::to_string(kMaxExpmDim));
  if (m.rows() == 0) return Matrix<typename Derived::Scalar>(0, 0);
  const Matrix<typename Derived::Scalar> scaled = m * t;
  return scaled.exp();
}

/// Exact zero-order-hold pair for x' = A x + B u over one step dt:
/// exp([[A, B], [0, 0]] dt) = [[phi, gamma], [0, I]].
template <typename Scalar>
struct ZohPair {
  Matrix<Scalar> phi;
  Matrix<Scalar> gamma;
};

template <typename DerivedA, typename DerivedB>
ZohPair<typename DerivedA::Scalar> zoh(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
                                       typename DerivedA::Scalar dt) {
  using Scalar = typename DerivedA::Scalar;
  require_square(a, "zoh");
  if (b.rows() != a.rows()) throw DimensionError("zoh: B row count differs from A");
  const Eigen::Index n = a.rows();
  const Eigen::Index m = b.cols();
  Matrix<Scalar> aug = Matrix<Scalar>::Zero(n + m, n + m);
  aug.topLeftCorner(n, n) = a;
  aug.topRightCorner(n, m) = b;
  const Matrix<Scalar> e = expm(aug, dt);
  return {e.topLeftCorner(n, n), e.topRightCorner(n, m)};
}

/// Partial-pivot LU solve of m x = rhs. Real or complex scalars.
template <typename DerivedA, typename DerivedB>
Matrix<typename DerivedA::Scalar> solve(const Eigen::MatrixBase<DerivedA>& m, const Eigen::MatrixBase<DerivedB>& rhs) {
  using Scalar = typename DerivedA::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using std::abs;
  require_square(m, "solve");
  if (rhs.rows() != m.rows())
    throw DimensionError("solve: rhs has " + std::to_string(rhs.rows()) + " rows, matrix has " +
                         std::to_string(m.rows()));
  const Eigen::PartialPivLU<Matrix<Scalar>> lu(m);
  const auto diag = lu.matrixLU().diagonal();
  Real smallest = std::numeric_limits<Real>::infinity();
  Real largest(0);
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    const Real p = abs(diag(i));
    smallest = std::min(smallest, p);
    largest = std::max(largest, p);
  }
  const Real threshold = Real(m.rows()) * Eigen::NumTraits<Real>::epsilon() * largest;
  if (diag.size() > 0 && (largest == Real(0) || smallest <= threshold))
    throw SingularMatrixError("solve: matrix is singular to working precision", static_cast<double>(smallest));
  return lu.solve(rhs.template cast<Scalar>());
}

/// ‖m x − rhs‖ / ‖rhs‖
template <typename DerivedA, typename DerivedX, typename DerivedB>
double relative_residual(const Eigen::MatrixBase<DerivedA>& m, const Eigen::MatrixBase<DerivedX>& x,
                         const Eigen::MatrixBase<DerivedB>& rhs) {
  const double denom = static_cast<double>(rhs.norm());
  const double num = static_cast<double>((m * x - rhs).norm());
  return denom == 0.0 ? num : num / denom;
}

/// Parlett–Reinsch balancing: D⁻¹ m D with D a diagonal of powers of two, so
/// the similarity is exact and row/column norms become comparable.
inline Eigen::MatrixXd balance(Eigen::MatrixXd m) {
  const Eigen::Index n = m.rows();
  for (bool converged = false; !converged;) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = m.col(i).cwiseAbs().sum() - std::abs(m(i, i));
      const double r = m.row(i).cwiseAbs().sum() - std::abs(m(i, i));
      if (c == 0.0 || r == 0.0 || !std::isfinite(c + r)) continue;
      // scaling row i by 1/f and column i by f changes the norm sum to c·f + r/f
      double f = 1.0;
      double scaled = c;
      while (scaled < r / 2.0) {
        scaled *= 4.0;
        f *= 2.0;
      }
      while (scaled > r * 2.0) {
        scaled /= 4.0;
        f /= 2.0;
      }
      if ((scaled + r) / f < 0.95 * (c + r)) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
  return m;
}

/// Eigenvalues of a real square matrix (balanced, then Hessenberg QR).
inline ComplexList eigenvalues(const Eigen::MatrixXd& m) {
  require_square(m, "eigenvalues");
  if (m.rows() == 0) return {};
  Eigen::EigenSolver<Eigen::MatrixXd> solver(balance(m), false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue iteration did not converge");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return ComplexList(ev.data(), ev.data() + ev.size());
}

}  // namespace halfgain
