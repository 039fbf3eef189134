#include "halfgain/analysis.hpp"

#include <cmath>
#include <numbers>

namespace halfgain {

std::vector<double> FrequencyResponse::phase_deg() const {
  std::vector<double> out(values.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double ph = std::arg(values[i]) * 180.0 / std::numbers::pi;
    if (i > 0) {
      while (ph - prev > 180.0) ph -= 360.0;
      while (ph - prev < -180.0) ph += 360.0;
    }
    out[i] = ph;
    prev = ph;
  }
  return out;
}

std::vector<double> log_grid(double omega_min, double omega_max, int points) {
  if (!(omega_min > 0.0 && omega_max > omega_min)) throw ParameterError("frequency grid needs 0 < omega_min < omega_max");
  if (points < 2) throw ParameterError("frequency grid needs at least 2 points");
  std::vector<double> grid(static_cast<std::size_t>(points));
  const double lo = std::log10(omega_min);
  const double hi = std::log10(omega_max);
  for (int i = 0; i < points; ++i) grid[static_cast<std::size_t>(i)] = std::pow(10.0, lo + (hi - lo) * i / (points - 1));
  grid.front() = omega_min;
  grid.back() = omega_max;
  return grid;
}

FrequencyResponse freq_response(const TransferFunction& tf, const std::vector<double>& omegas) {
  FrequencyResponse fr;
  fr.omegas = omegas;
  fr.values.reserve(omegas.size());
  for (double w : omegas) fr.values.push_back(tf({0.0, w}));
  return fr;
}

FrequencyResponse freq_response(const TransferFunction& tf, double omega_min, double omega_max, int points) {
  return freq_response(tf, log_grid(omega_min, omega_max, points));
}

StateSpace controller_state_space(const AdrcController& ctrl) {
  StateSpace ss;
  const int ns = ctrl.states();
  ss.a = ctrl.a;
  ss.b = Eigen::MatrixXd(ns, 2);
  ss.b << ctrl.b_r, ctrl.b_y;
  ss.c = ctrl.c_u;
  ss.d = Eigen::MatrixXd(1, 2);
  ss.d << ctrl.d_r, ctrl.d_y;
  ss.input_names = {"r", "y"};
  ss.output_names = {"u"};
  ss.validate();
  return ss;
}

TransferFunction controller_feedback_tf(const AdrcController& ctrl) {
  return to_transfer_function(controller_state_space(ctrl), 0, 1);
}

TransferFunction loop_gain(const AdrcController& ctrl, const TransferFunction& plant) {
  if (!plant.is_proper()) throw ParameterError("loop_gain: plant must be proper");
  StateSpace feedback = controller_state_space(ctrl);
  feedback.b = feedback.b.col(1).eval();
  feedback.d = feedback.d.col(1).eval();
  feedback.c = -feedback.c;
  feedback.d = -feedback.d;
  feedback.input_names = {"y"};
  return to_transfer_function(series(feedback, to_state_space(plant)));
}

double crossover_frequency(const TransferFunction& g, double omega_min, double omega_max) {
  const auto grid = log_grid(omega_min, omega_max, 2000);
  auto excess = [&](double w) { return std::abs(g({0.0, w})) - 1.0; };
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double lo = grid[i];
    double hi = grid[i + 1];
    const double f_lo = excess(lo);
    if (f_lo == 0.0) return lo;
    if ((f_lo > 0.0) == (excess(hi) > 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = std::sqrt(lo * hi);
      if ((excess(mid) > 0.0) == (f_lo > 0.0))
        lo = mid;
      else
        hi = mid;
    }
    return std::sqrt(lo * hi);
  }
  throw ParameterError("no gain crossover in the requested frequency range");
}

std::string_view to_string(GangMember m) {
  switch (m) {
    case GangMember::Yr:
      return "G_yr";
    case GangMember::Yd:
      return "G_yd";
    case GangMember::Yn:
      return "G_yn";
    case GangMember::Ur:
      return "G_ur";
    case GangMember::Ud:
      return "G_ud";
    case GangMember::Un:
      return "G_un";
  }
  return "?";
}

GangOfSix gang_of_six(const AdrcController& ctrl, const StateSpace& plant) {
  plant.validate();
  if (plant.inputs() != 1 || plant.outputs() != 1) throw DimensionError("gang_of_six: plant must be SISO");
  const double dp = plant.d(0, 0);
  if (dp != 0.0 && ctrl.d_y != 0.0)
    throw InterconnectionError("gang_of_six: algebraic loop through plant and controller feedthrough");

  const int np = plant.states();
  const int nc = ctrl.states();
  const int n = np + nc;
  enum { kR = 0, kD = 1, kN = 2 };

  // Loop signals as rows over [x_p; x_c] and over the inputs (r, d, n).
  // With dp·d_y = 0 there is no algebraic loop to resolve.
  Eigen::RowVectorXd u_x(n), y_x(n);
  Eigen::RowVector3d u_in, y_in;
  u_x << ctrl.d_y * plant.c, ctrl.c_u;
  u_in << ctrl.d_r, 0.0, ctrl.d_y;
  y_x << plant.c + dp * ctrl.d_y * plant.c, dp * ctrl.c_u;
  y_in << dp * ctrl.d_r, dp, 0.0;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a.topLeftCorner(np, np) = plant.a;
  a.bottomRightCorner(nc, nc) = ctrl.a;
  a.topRows(np) += plant.b.col(0) * u_x;
  a.bottomRows(nc) += ctrl.b_y * y_x;

  Eigen::RowVector3d plant_in = u_in;  // u + d
  plant_in(kD) += 1.0;
  Eigen::RowVector3d meas_in = y_in;  // y + n
  meas_in(kN) += 1.0;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, 3);
  b.topRows(np) = plant.b.col(0) * plant_in;
  b.bottomRows(nc) = ctrl.b_y * meas_in;
  b.bottomRows(nc).col(kR) += ctrl.b_r;

  GangOfSix g;
  g.closed_loop.a = a;
  g.closed_loop.b = b;
  g.closed_loop.c = Eigen::MatrixXd(2, n);
  g.closed_loop.c << y_x, u_x;
  g.closed_loop.d = Eigen::MatrixXd(2, 3);
  g.closed_loop.d << y_in, u_in;
  g.closed_loop.input_names = {"r", "d", "n"};
  g.closed_loop.output_names = {"y", "u"};
  g.closed_loop.validate();

  for (GangMember m : kGangMembers)
    g.members[static_cast<std::size_t>(m)] =
        to_transfer_function(g.closed_loop, GangOfSix::output_of(m), GangOfSix::input_of(m));
  return g;
}

GangOfSix gang_of_six(const AdrcController& ctrl, const TransferFunction& plant) {
  return gang_of_six(ctrl, to_state_space(plant));
}

StepResponse step_response(const StateSpace& ss, int input, double t_final, double dt) {
  ss.validate();
  if (!(dt > 0.0)) throw ParameterError("step_response: dt must be positive");
  if (!(t_final > dt)) throw ParameterError("step_response: t_final must exceed dt");
  if (input < 0 || input >= ss.inputs()) throw DimensionError("step_response: input out of range");

  const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
  const auto pair = zoh(ss.a, ss.b.col(input), dt);
  const Eigen::VectorXd drive = pair.gamma.col(0);

  StepResponse out;
  out.output_names = ss.output_names;
  out.time.resize(steps + 1);
  out.outputs.resize(static_cast<Eigen::Index>(steps + 1), ss.outputs());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(ss.states());
  for (std::size_t k = 0; k <= steps; ++k) {
    out.time[k] = static_cast<double>(k) * dt;
    out.outputs.row(static_cast<Eigen::Index>(k)) = (ss.c * x + ss.d.col(input)).transpose();
    x = pair.phi * x + drive;
  }
  return out;
}

StepResponse step_response(const TransferFunction& tf, double t_final, double dt) {
  return step_response(to_state_space(tf), 0, t_final, dt);
}

StateSpace chain_state_feedback(const Eigen::VectorXd& k) {
  const int n = static_cast<int>(k.size());
  if (n < 1) throw OrderError("chain_state_feedback: empty gain vector");
  const IntegratorChain<double> chain(n);
  StateSpace ss;
  ss.a = chain.a - chain.b * k.transpose();
  ss.b = chain.b * k(0);
  ss.c = Eigen::MatrixXd::Zero(1, n);
  ss.c(0, 0) = 1.0;
  ss.d = Eigen::MatrixXd::Zero(1, 1);
  ss.input_names = {"r"};
  ss.output_names = {"y"};
  return ss;
}

}  // namespace halfgain
