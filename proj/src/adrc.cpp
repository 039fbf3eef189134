#include "halfgain/adrc.hpp"

#include <cmath>
#include <limits>

namespace halfgain {

namespace {

void check_lengths(const TuningConfig& cfg, const GainSet& gains) {
  const int n = cfg.order;
  if (gains.k.size() != n)
    throw DimensionError("controller gains: expected length " + std::to_string(n) + ", got " +
                         std::to_string(gains.k.size()));
  if (gains.l.size() != n + 1)
    throw DimensionError("observer gains: expected length " + std::to_string(n + 1) + ", got " +
                         std::to_string(gains.l.size()));
  require_finite(gains.k, "controller gains");
  require_finite(gains.l, "observer gains");
}

}  // namespace

EsoSystem build_eso(const TuningConfig& cfg, const GainSet& gains) {
  cfg.validate();
  check_lengths(cfg, gains);
  const int n = cfg.order;
  const IntegratorChain<double> chain(n + 1);
  EsoSystem eso;
  eso.a = chain.a;
  eso.b = Eigen::VectorXd::Zero(n + 1);
  eso.b(n - 1) = cfg.b0;
  eso.c = Eigen::RowVectorXd::Zero(n + 1);
  eso.c(0) = 1.0;
  eso.l = gains.l;
  return eso;
}

AdrcController build_controller(const TuningConfig& cfg, const GainSet& gains) {
  const EsoSystem eso = build_eso(cfg, gains);
  const int n = cfg.order;

  // u = (1/b0)(k1 r − [kᵀ 1] x̂)
  Eigen::RowVectorXd feedback(n + 1);
  feedback << gains.k.transpose(), 1.0;

  // b_ESO/b0 is exactly e_n (b0/b0 == 1 in IEEE arithmetic), so the
  // disturbance-compensation column cancels the shift entry exactly.
  const Eigen::VectorXd b_unit = eso.b / cfg.b0;

  AdrcController ctrl;
  ctrl.a = eso.a - b_unit * feedback - eso.l * eso.c;
  ctrl.b_r = gains.k(0) * b_unit;
  ctrl.b_y = eso.l;
  ctrl.c_u = -feedback / cfg.b0;
  ctrl.d_r = gains.k(0) / cfg.b0;
  ctrl.d_y = 0.0;
  ctrl.observer_bandwidth = cfg.observer_bandwidth();
  return ctrl;
}

AdrcController build_controller(const TuningConfig& cfg) { return build_controller(cfg, tune(cfg)); }

double recommended_max_sample_time(const AdrcController& ctrl) {
  if (ctrl.observer_bandwidth <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.1 / ctrl.observer_bandwidth;
}

DiscreteController discretize_zoh(const AdrcController& ctrl, double ts) {
  if (!(std::isfinite(ts) && ts > 0.0)) throw ParameterError("sample time must be positive");
  const int ns = ctrl.states();

  Eigen::MatrixXd inputs(ns, 2);
  inputs << ctrl.b_r, ctrl.b_y;
  const auto pair = zoh(ctrl.a, inputs, ts);

  DiscreteController dc;
  dc.ad = pair.phi;
  dc.bd_r = pair.gamma.col(0);
  dc.bd_y = pair.gamma.col(1);
  dc.c = ctrl.c_u;
  dc.d_r = ctrl.d_r;
  dc.d_y = ctrl.d_y;
  dc.ts = ts;
  return dc;
}

ControllerStep controller_step(const DiscreteController& dc, const Eigen::VectorXd& state, double r, double y) {
  if (state.size() != dc.states())
    throw DimensionError("controller_step: state length " + std::to_string(state.size()) + ", expected " +
                         std::to_string(dc.states()));
  ControllerStep out;
  out.u = dc.c.dot(state) + dc.d_r * r + dc.d_y * y;
  out.next_state = dc.ad * state + dc.bd_r * r + dc.bd_y * y;
  return out;
}

}  // namespace halfgain
