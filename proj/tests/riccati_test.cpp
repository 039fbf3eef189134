#include "halfgain/riccati.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace halfgain {
namespace {

double MaxRelDeviation(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return ((got - want).cwiseAbs().array() / want.cwiseAbs().array()).maxCoeff();
}

TEST(Riccati, SecondOrderClosedForm) {
  Eigen::MatrixXd p_exact(2, 2);
  p_exact << 0.5, 0.5, 0.5, 1.0;
  // the closed form annihilates the Riccati left side exactly
  const auto prob_d = RiccatiProblem<double>::integrator_chain(2, 1.0);
  EXPECT_EQ(riccati_residual(prob_d, p_exact), 0.0);

  const auto sol = solve_are(RiccatiProblem<Quad>::integrator_chain(2, Quad(1)));
  EXPECT_LT((sol.p.cast<double>() - p_exact).norm(), 1e-14);
  EXPECT_NEAR(static_cast<double>(sol.gains(0)), 0.5, 1e-15);
  EXPECT_NEAR(static_cast<double>(sol.gains(1)), 1.0, 1e-15);
  EXPECT_LT(sol.residual, Quad(1e-10));
}

TEST(Riccati, ScalarCase) {
  const auto sol = solve_are(RiccatiProblem<double>::integrator_chain(1, 2.0));
  EXPECT_NEAR(sol.p(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(sol.gains(0), 1.0, 1e-14);
}

TEST(Riccati, ThirdOrderGainsAndPoles) {
  const Eigen::VectorXd k = alpha_controller_gains(3, 1.0);
  EXPECT_LT(MaxRelDeviation(k, Eigen::Vector3d(0.5, 1.5, 1.5)), 1e-12);
  const auto poles = poly_roots(Polynomial<double>{1.0, k(2), k(1), k(0)});
  const double h = std::numbers::sqrt3 / 2.0;
  for (std::complex<double> want : {std::complex<double>(-0.5, 0), {-0.5, h}, {-0.5, -h}}) {
    const bool found = std::any_of(poles.begin(), poles.end(), [&](auto p) { return std::abs(p - want) < 1e-9; });
    EXPECT_TRUE(found) << want;
  }
}

TEST(AlphaControllerGains, Examples) {
  EXPECT_LT(MaxRelDeviation(alpha_controller_gains(2, 1.0), Eigen::Vector2d(0.5, 1.0)), 1e-12);
  EXPECT_LT(MaxRelDeviation(alpha_controller_gains(2, 2.0), Eigen::Vector2d(2.0, 2.0)), 1e-12);
  EXPECT_LT(MaxRelDeviation(alpha_controller_gains(4, 1.0), Eigen::Vector4d(0.5, 2.0, 3.0, 2.0)), 1e-12);
}

TEST(AlphaControllerGains, FourthOrderPolesShareRealPart) {
  const IntegratorChain<double> chain(4);
  const Eigen::MatrixXd closed = chain.a - chain.b * alpha_controller_gains(4, 1.0).transpose();
  for (const auto& p : eigenvalues(closed)) EXPECT_NEAR(p.real(), -0.5, 1e-8);
}

// Exactly half the bandwidth gains, checked by an iteration that never uses that relation.
TEST(AlphaControllerGains, HalfOfBandwidthGains) {
  for (int n = 2; n <= 6; ++n) {
    for (double alpha : {0.5, 1.0, 2.0, 10.0}) {
      const auto sol = solve_are(RiccatiProblem<Quad>::integrator_chain(n, Quad(alpha)));
      const Eigen::VectorXd want = 0.5 * bandwidth_controller_gains(n, alpha);
      EXPECT_LT(MaxRelDeviation(sol.gains.cast<double>(), want), 1e-8) << "n=" << n << " alpha=" << alpha;
      EXPECT_LT(static_cast<double>(sol.residual), 1e-10);

      // symmetric positive definite
      EXPECT_EQ(sol.p, sol.p.transpose());
      EXPECT_EQ(Eigen::LLT<Matrix<Quad>>(sol.p).info(), Eigen::Success);

      const IntegratorChain<Quad> chain(n);
      const Matrix<Quad> closed = chain.a - chain.b * sol.gains.transpose();
      EXPECT_LT(static_cast<double>(lyapunov_decay_check(sol.p, closed, Quad(alpha))), 1e-9);
      for (const auto& p : eigenvalues(closed.cast<double>()))
        EXPECT_NEAR(p.real(), -alpha / 2.0, 1e-8 * std::max(1.0, alpha)) << "n=" << n << " alpha=" << alpha;
    }
  }
}

TEST(AlphaControllerGains, AlternativeInitializerReachesSameFixedPoint) {
  for (int n = 2; n <= 6; ++n) {
    for (double alpha : {0.5, 1.0, 2.0, 10.0}) {
      const auto prob = RiccatiProblem<Quad>::integrator_chain(n, Quad(alpha));
      const auto from_bw = solve_are(prob);
      const auto from_fast = solve_are(prob, bandwidth_controller_gains<Quad>(n, Quad(2 * alpha)));
      EXPECT_GT(from_fast.iterations, 1);
      EXPECT_LT(MaxRelDeviation(from_fast.gains.cast<double>(), from_bw.gains.cast<double>()), 1e-10)
          << "n=" << n << " alpha=" << alpha;
    }
  }
}

TEST(AlphaObserverGains, DualOfControllerDesign) {
  for (int n = 1; n <= 5; ++n) {
    for (double alpha : {1.0, 10.0}) {
      const Eigen::VectorXd l = alpha_observer_gains(n, alpha);
      EXPECT_LT(MaxRelDeviation(l, 0.5 * bandwidth_observer_gains(n, alpha)), 1e-8);
    }
  }
}

TEST(SolveAre, Preconditions) {
  EXPECT_THROW(solve_are(RiccatiProblem<double>::integrator_chain(11, 1.0)), OrderError);
  EXPECT_THROW(solve_are(RiccatiProblem<double>::integrator_chain(2, 0.0)), ParameterError);
  // closed-loop poles at −0.1 do not outrun the α/2 = 0.5 shift
  EXPECT_THROW(solve_are(RiccatiProblem<double>::integrator_chain(2, 1.0), bandwidth_controller_gains(2, 0.1)),
               ParameterError);
  auto prob = RiccatiProblem<double>::integrator_chain(2, 1.0);
  prob.a(1, 0) = 1.0;
  EXPECT_THROW(solve_are(prob), ParameterError);
}

TEST(SolveAre, DoublePrecisionCannotMeetAbsoluteResidualForLargeSolutions) {
  // P(6, α = 10) has entries near 5e10; rounding alone leaves a residual far above 1e-12.
  EXPECT_THROW(solve_are(RiccatiProblem<double>::integrator_chain(6, 10.0)), ConvergenceError);
}

TEST(LyapunovDecayCheck, Examples) {
  const auto sol = solve_are(RiccatiProblem<double>::integrator_chain(2, 1.0));
  const IntegratorChain<double> chain(2);
  const Eigen::MatrixXd closed = chain.a - chain.b * sol.gains.transpose();
  EXPECT_LT(lyapunov_decay_check(sol.p, closed, 1.0), 1e-12);

  Eigen::MatrixXd perturbed = sol.p;
  perturbed(0, 0) += 0.1;
  EXPECT_GT(lyapunov_decay_check(perturbed, closed, 1.0), 0.01);

  const Eigen::MatrixXd p1 = Eigen::MatrixXd::Constant(1, 1, 1.0);
  const Eigen::MatrixXd a1 = Eigen::MatrixXd::Constant(1, 1, -1.0);
  EXPECT_EQ(lyapunov_decay_check(p1, a1, 2.0), 0.0);

  EXPECT_THROW(lyapunov_decay_check(p1, closed, 1.0), DimensionError);
}

}  // namespace
}  // namespace halfgain
