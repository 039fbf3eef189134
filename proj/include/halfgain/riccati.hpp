#pragma once

#include <string>

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/float128.hpp>
#include <unsupported/Eigen/KroneckerProduct>

#include "halfgain/linalg.hpp"
#include "halfgain/tuning.hpp"

// Algebraic Riccati oracle for the α-controller on an integrator chain:
//
//   (A + α/2 I)ᵀ P + P (A + α/2 I) − 2 P b bᵀ P = 0,   kᵀ = bᵀ P,
//
// solved by Kleinman–Newton iteration. It never uses the half-gain relation,
// so its gains can be compared against halved bandwidth gains.
//
// P grows like α^(2n−1) (≈5e10 for n = 6, α = 10), which puts an absolute
// residual of 1e-10 out of reach in double. The oracle therefore runs in
// quad precision by default; every routine is templated on the scalar.

namespace halfgain {

using Quad = boost::multiprecision::float128;

inline constexpr int kMaxRiccatiOrder = 10;
inline constexpr int kMaxNewtonIterations = 100;
inline constexpr double kNewtonTolerance = 1e-12;

template <typename Scalar>
struct RiccatiProblem {
  Matrix<Scalar> a;
  Vector<Scalar> b;
  Scalar alpha;

  static RiccatiProblem integrator_chain(int n, Scalar alpha) {
    IntegratorChain<Scalar> chain(n);
    return {std::move(chain.a), std::move(chain.b), alpha};
  }

  int order() const { return static_cast<int>(a.rows()); }

  bool is_integrator_chain() const {
    const IntegratorChain<Scalar> chain(order());
    return a.rows() == a.cols() && b.size() == a.rows() && a == chain.a && b == chain.b;
  }
};

template <typename Scalar>
struct RiccatiSolution {
  Matrix<Scalar> p;
  Vector<Scalar> gains;  // bᵀP
  Scalar residual;       // Frobenius norm of the Riccati left side
  int iterations = 0;
};

/// ‖(A + α/2 I)ᵀP + P(A + α/2 I) − 2 P b bᵀ P‖_F
template <typename Scalar>
Scalar riccati_residual(const RiccatiProblem<Scalar>& prob, const Matrix<Scalar>& p) {
  const int n = prob.order();
  const Matrix<Scalar> shifted = prob.a + (prob.alpha / Scalar(2)) * Matrix<Scalar>::Identity(n, n);
  const Vector<Scalar> pb = p * prob.b;
  const Matrix<Scalar> lhs = shifted.transpose() * p + p * shifted - Scalar(2) * pb * pb.transpose();
  return lhs.norm();
}

/// Solves Fᵀ P + P F + W = 0 through the Kronecker-vectorized linear system
/// (I ⊗ Fᵀ + Fᵀ ⊗ I) vec(P) = −vec(W).
template <typename Scalar>
Matrix<Scalar> solve_lyapunov(const Matrix<Scalar>& f, const Matrix<Scalar>& w) {
  require_square(f, "solve_lyapunov");
  if (w.rows() != f.rows() || w.cols() != f.cols()) throw DimensionError("solve_lyapunov: W shape mismatch");
  const Eigen::Index n = f.rows();
  const Matrix<Scalar> eye = Matrix<Scalar>::Identity(n, n);
  const Matrix<Scalar> ft = f.transpose();
  const Matrix<Scalar> op = Eigen::kroneckerProduct(eye, ft).eval() + Eigen::kroneckerProduct(ft, eye).eval();
  const Vector<Scalar> rhs = -Eigen::Map<const Vector<Scalar>>(w.data(), n * n);
  const Vector<Scalar> vec_p = solve(op, rhs);
  const Matrix<Scalar> p = Eigen::Map<const Matrix<Scalar>>(vec_p.data(), n, n);
  return (p + p.transpose()) / Scalar(2);
}

/// Kleinman–Newton iteration from an explicit initial state feedback u = −K₀x.
/// K₀ must make A − bK₀ decay faster than α/2.
template <typename Scalar>
RiccatiSolution<Scalar> solve_are(const RiccatiProblem<Scalar>& prob, const Vector<Scalar>& initial_feedback) {
  const int n = prob.order();
  if (n < 1 || n > kMaxRiccatiOrder)
    throw OrderError("solve_are: order must be in [1, " + std::to_string(kMaxRiccatiOrder) + "], got " +
                     std::to_string(n));
  if (!(prob.alpha > Scalar(0))) throw ParameterError("solve_are: alpha must be positive");
  if (!prob.is_integrator_chain()) throw ParameterError("solve_are: problem is not an integrator chain");
  if (initial_feedback.size() != n) throw DimensionError("solve_are: initial feedback length mismatch");

  const Matrix<Scalar> shifted = prob.a + (prob.alpha / Scalar(2)) * Matrix<Scalar>::Identity(n, n);
  {
    const Eigen::MatrixXd f0 = (shifted - prob.b * initial_feedback.transpose()).template cast<double>();
    for (const auto& ev : eigenvalues(f0))
      if (ev.real() >= 0.0) throw ParameterError("solve_are: initial feedback is not stabilizing");
  }

  // With R = 1/2 the Newton feedback is K = 2 bᵀP and the update solves
  // (Ā − bK)ᵀP + P(Ā − bK) + ½ KᵀK = 0.
  Vector<Scalar> feedback = initial_feedback;
  RiccatiSolution<Scalar> sol;
  for (int it = 1; it <= kMaxNewtonIterations; ++it) {
    const Matrix<Scalar> closed = shifted - prob.b * feedback.transpose();
    const Matrix<Scalar> w = (feedback * feedback.transpose()) / Scalar(2);
    sol.p = solve_lyapunov(closed, w);
    feedback = Scalar(2) * (sol.p * prob.b);
    sol.residual = riccati_residual(prob, sol.p);
    sol.iterations = it;
    if (sol.residual < Scalar(kNewtonTolerance)) break;
  }
  if (!(sol.residual < Scalar(kNewtonTolerance)))
    throw ConvergenceError("solve_are: Newton iteration did not converge", static_cast<double>(sol.residual));

  const Eigen::LLT<Matrix<Scalar>> llt(sol.p);
  if (llt.info() != Eigen::Success) throw DefinitenessError("solve_are: solution is not positive definite");

  sol.gains = sol.p * prob.b;
  return sol;
}

/// Newton iteration started from the bandwidth gains at bandwidth α
/// (all poles at −α, hence stabilizing for the shifted chain).
template <typename Scalar>
RiccatiSolution<Scalar> solve_are(const RiccatiProblem<Scalar>& prob) {
  return solve_are(prob, bandwidth_controller_gains<Scalar>(prob.order(), prob.alpha));
}

/// α-controller gains kᵀ = bᵀP for an n-th order chain.
inline Eigen::VectorXd alpha_controller_gains(int n, double alpha) {
  const auto sol = solve_are(RiccatiProblem<Quad>::integrator_chain(n, Quad(alpha)));
  return sol.gains.template cast<double>();
}

/// α-design observer gains for an order-n ADRC (observer chain of order n+1).
/// A_ESO − l cᵀ is similar to (A − b kᵀ)ᵀ under index reversal, so l is the
/// reversed controller gain vector of the (n+1)-chain.
inline Eigen::VectorXd alpha_observer_gains(int n, double alpha) {
  return alpha_controller_gains(n + 1, alpha).reverse();
}

/// ‖A_clᵀP + P A_cl + αP‖_F; zero certifies V̇ = −αV for V = xᵀPx.
template <typename Scalar>
Scalar lyapunov_decay_check(const Matrix<Scalar>& p, const Matrix<Scalar>& a_cl, Scalar alpha) {
  require_square(p, "lyapunov_decay_check");
  require_square(a_cl, "lyapunov_decay_check");
  if (p.rows() != a_cl.rows()) throw DimensionError("lyapunov_decay_check: P and A_cl differ in size");
  return (a_cl.transpose() * p + p * a_cl + alpha * p).norm();
}

}  // namespace halfgain
