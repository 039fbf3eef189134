#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "halfgain/adrc.hpp"
#include "halfgain/state_space.hpp"
#include "halfgain/tuning.hpp"

namespace halfgain {

enum class SignalKind { Zero, Step, WhiteNoise };

std::string_view to_string(SignalKind kind);
/// Accepts "zero", "step", "white-noise".
SignalKind parse_signal_kind(std::string_view text);

/// One exogenous loop signal (reference r, input disturbance d or measurement noise n).
/// All kinds are zero before start_time.
struct SignalSpec {
  SignalKind kind = SignalKind::Zero;
  double amplitude = 0.0;  // step height
  double start_time = 0.0;
  double noise_std = 0.0;
  std::optional<std::uint64_t> seed;  // mandatory for white noise

  static SignalSpec zero() { return {}; }
  static SignalSpec step(double amplitude, double start_time = 0.0) {
    return {SignalKind::Step, amplitude, start_time, 0.0, std::nullopt};
  }
  static SignalSpec white_noise(double noise_std, std::uint64_t seed, double start_time = 0.0) {
    return {SignalKind::WhiteNoise, 0.0, start_time, noise_std, seed};
  }

  void validate() const;
};

/// Zero-mean unit Gaussian samples from mt19937_64 through the Box–Muller
/// transform. Both stages are fully specified, so a seed reproduces the same
/// stream on every platform (std::normal_distribution gives no such promise).
class GaussianNoise {
 public:
  explicit GaussianNoise(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  double uniform_open();  // (0, 1)

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct SimTrace {
  double ts = 0.0;
  std::vector<double> time;
  std::vector<double> r;
  std::vector<double> d;
  std::vector<double> n;
  std::vector<double> u;
  std::vector<double> y;
  Eigen::MatrixXd xhat;  // samples × (order+1), observer state used at each sample

  std::size_t size() const { return time.size(); }
};

struct Metrics {
  double rms_u = 0.0;      // steady-state window, DC removed
  double rms_y_err = 0.0;  // steady-state window, y − r
  double overshoot_pct = 0.0;
  double settling_time_2pct = 0.0;
};

/// Closed loop with a sampled controller. Per sample k: measure y + n,
/// run controller_step, hold u + d on the plant for one period (exact ZOH).
/// A plant feedthrough term sees the input held from the previous period.
SimTrace simulate(const StateSpace& plant, const DiscreteController& dc, const SignalSpec& r, const SignalSpec& d,
                  const SignalSpec& n, double t_final);
SimTrace simulate(const TransferFunction& plant, const DiscreteController& dc, const SignalSpec& r,
                  const SignalSpec& d, const SignalSpec& n, double t_final);

/// Fraction of trailing samples used for the steady-state RMS values.
inline constexpr double kSteadyStateFraction = 0.5;
inline constexpr double kDivergenceBound = 1e9;

/// Step metrics are normalized by ref_value; pass std::nullopt to skip them
/// (overshoot and settling time are then reported as 0).
Metrics metrics(const SimTrace& trace, std::optional<double> ref_value);

struct ModeMetrics {
  Mode mode;
  Metrics metrics;
};

/// Unit reference step at t = 0 plus white measurement noise, repeated for
/// every tuning mode with the same seed.
std::vector<ModeMetrics> noise_sensitivity_study(const TuningConfig& cfg_base, const TransferFunction& plant,
                                                 double noise_std, std::uint64_t seed, double t_final,
                                                 double ts = 1e-3);

}  // namespace halfgain
