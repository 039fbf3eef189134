#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "halfgain/errors.hpp"

namespace halfgain {

using ComplexList = std::vector<std::complex<double>>;

/// Real polynomial with coefficients stored in descending powers.
///
/// Leading zeros are stripped on construction, so `coeffs().front()` is
/// nonzero unless the polynomial is identically zero (stored as `{0}`).
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() : coeffs_{Scalar(0)} {}
  Polynomial(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) { normalize(); }
  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  /// (λ + a)^n
  static Polynomial binomial_power(Scalar a, int n) {
    Polynomial p{Scalar(1)};
    const Polynomial factor{Scalar(1), a};
    for (int i = 0; i < n; ++i) p = p * factor;
    return p;
  }

  /// Monic polynomial with the given roots. Conjugate pairs give real coefficients;
  /// imaginary residue from unpaired roots is discarded.
  static Polynomial from_roots(const ComplexList& roots) {
    std::vector<std::complex<double>> c{1.0};
    for (const auto& r : roots) {
      std::vector<std::complex<double>> next(c.size() + 1, 0.0);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i] += c[i];
        next[i + 1] -= r * c[i];
      }
      c = std::move(next);
    }
    std::vector<Scalar> re(c.size());
    std::transform(c.begin(), c.end(), re.begin(), [](auto z) { return Scalar(z.real()); });
    return Polynomial(std::move(re));
  }

  const std::vector<Scalar>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == Scalar(0); }
  Scalar leading() const { return coeffs_.front(); }

  /// Coefficient of λ^power (zero beyond the degree).
  Scalar coeff(int power) const {
    if (power < 0 || power > degree()) return Scalar(0);
    return coeffs_[static_cast<std::size_t>(degree() - power)];
  }

  /// Horner evaluation; works for real and complex arguments.
  template <typename T>
  auto operator()(const T& x) const {
    using R = decltype(Scalar() * x);
    R acc = R(coeffs_.front());
    for (std::size_t i = 1; i < coeffs_.size(); ++i) acc = acc * x + R(coeffs_[i]);
    return acc;
  }

  Scalar norm() const {
    using std::sqrt;
    Scalar s(0);
    for (const auto& c : coeffs_) s += c * c;
    return sqrt(s);
  }

  Polynomial monic() const {
    if (is_zero()) throw UndefinedRootsError("cannot normalize the zero polynomial");
    std::vector<Scalar> c = coeffs_;
    const Scalar lead = c.front();
    for (auto& v : c) v /= lead;
    return Polynomial(std::move(c));
  }

  /// Drops leading coefficients whose magnitude is below `rel_tol * norm()`.
  Polynomial trimmed(Scalar rel_tol) const {
    using std::abs;
    const Scalar cutoff = rel_tol * norm();
    std::size_t first = 0;
    while (first + 1 < coeffs_.size() && abs(coeffs_[first]) <= cutoff) ++first;
    return Polynomial(std::vector<Scalar>(coeffs_.begin() + static_cast<std::ptrdiff_t>(first), coeffs_.end()));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator*(Scalar s, const Polynomial& p) {
    std::vector<Scalar> c = p.coeffs_;
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    std::vector<Scalar> c(n, Scalar(0));
    std::copy(a.coeffs_.rbegin(), a.coeffs_.rend(), c.rbegin());
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[n - 1 - i] += b.coeffs_[b.coeffs_.size() - 1 - i];
    return Polynomial(std::move(c));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + Scalar(-1) * b; }

 private:
  void normalize() {
    if (coeffs_.empty()) coeffs_.push_back(Scalar(0));
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c != Scalar(0); });
    if (first == coeffs_.end()) {
      coeffs_.assign(1, Scalar(0));
      return;
    }
    coeffs_.erase(coeffs_.begin(), first);
  }

  std::vector<Scalar> coeffs_;
};

/// Companion matrix in integrator-chain form: ones on the superdiagonal and
/// the negated monic coefficients (constant term first) in the last row, so
/// that charpoly(companion(p)) == p.monic().
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> companion(const Polynomial<Scalar>& p) {
  if (p.degree() < 1) throw DimensionError("companion matrix needs degree >= 1");
  const Polynomial<Scalar> m = p.monic();
  const int n = m.degree();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> c =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = Scalar(1);
  for (int j = 0; j < n; ++j) c(n - 1, j) = -m.coeff(j);
  return c;
}

/// All complex roots, as eigenvalues of the companion matrix (Hessenberg QR).
/// Real input yields exact conjugate pairs.
inline ComplexList poly_roots(const Polynomial<double>& p) {
  if (p.is_zero()) throw UndefinedRootsError("roots of the zero polynomial are undefined");
  if (p.degree() == 0) return {};
  const Eigen::MatrixXd c = companion(p);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(c, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw UndefinedRootsError("companion eigenvalue iteration did not converge");
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return ComplexList(ev.data(), ev.data() + ev.size());
}

}  // namespace halfgain
