#include "halfgain/tuning.hpp"

#include <cmath>

namespace halfgain {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Bandwidth:
      return "bw";
    case Mode::HalfK:
      return "half-k";
    case Mode::HalfL:
      return "half-l";
    case Mode::HalfKL:
      return "half-kl";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  for (Mode m : kAllModes)
    if (to_string(m) == text) return m;
  throw ModeError("unknown tuning mode '" + std::string(text) + "' (expected bw, half-k, half-l or half-kl)");
}

void TuningConfig::validate() const {
  check_order(order);
  if (!(std::isfinite(omega_cl) && omega_cl > 0.0)) throw ParameterError("omega_cl must be positive and finite");
  if (!(std::isfinite(k_eso) && k_eso > 0.0)) throw ParameterError("k_eso must be positive and finite");
  if (!std::isfinite(b0) || b0 == 0.0) throw ParameterError("b0 must be nonzero and finite");
  if (halves_controller(mode) && order < 2)
    throw ModeError("mode " + std::string(to_string(mode)) +
                    " needs order >= 2: a first-order half-gain controller places its only pole at -omega_cl/2");
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  // result * (n - k + i) is divisible by i at every step
  for (int i = 1; i <= k; ++i) result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return result;
}

namespace {

Eigen::VectorXd halved(const Eigen::VectorXd& gains, const char* what) {
  if (gains.size() == 0) throw ParameterError(std::string(what) + ": empty gain vector");
  if ((gains.array() <= 0.0).any() || !gains.allFinite())
    throw ParameterError(std::string(what) + ": gains must be positive and finite");
  return gains * 0.5;
}

}  // namespace

Eigen::VectorXd half_gain_controller(const Eigen::VectorXd& k_bw) { return halved(k_bw, "half_gain_controller"); }

Eigen::VectorXd half_gain_observer(const Eigen::VectorXd& l_bw) { return halved(l_bw, "half_gain_observer"); }

GainSet tune(const TuningConfig& cfg) {
  cfg.validate();
  GainSet g;
  g.k = bandwidth_controller_gains(cfg.order, cfg.omega_cl);
  g.l = bandwidth_observer_gains(cfg.order, cfg.observer_bandwidth());
  if (halves_controller(cfg.mode)) g.k = half_gain_controller(g.k);
  if (halves_observer(cfg.mode)) g.l = half_gain_observer(g.l);
  return g;
}

}  // namespace halfgain
