#include "halfgain/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace halfgain {

std::string_view to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::Zero:
      return "zero";
    case SignalKind::Step:
      return "step";
    case SignalKind::WhiteNoise:
      return "white-noise";
  }
  return "?";
}

SignalKind parse_signal_kind(std::string_view text) {
  for (SignalKind k : {SignalKind::Zero, SignalKind::Step, SignalKind::WhiteNoise})
    if (to_string(k) == text) return k;
  throw ParameterError("unknown signal kind '" + std::string(text) + "' (expected zero, step or white-noise)");
}

void SignalSpec::validate() const {
  if (!std::isfinite(amplitude) || !std::isfinite(start_time) || !std::isfinite(noise_std))
    throw ParameterError("signal: non-finite parameter");
  if (start_time < 0.0) throw ParameterError("signal: start_time must be non-negative");
  if (kind == SignalKind::WhiteNoise) {
    if (noise_std < 0.0) throw ParameterError("signal: noise_std must be non-negative");
    if (!seed) throw ParameterError("signal: white noise needs a seed");
  } else if (noise_std != 0.0) {
    throw ParameterError("signal: noise_std only applies to white noise");
  }
}

double GaussianNoise::uniform_open() {
  // 53 random bits, offset by half an ulp to stay inside (0, 1)
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianNoise::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform_open();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

namespace {

class SignalSource {
 public:
  explicit SignalSource(const SignalSpec& spec) : spec_(spec) {
    spec_.validate();
    if (spec_.kind == SignalKind::WhiteNoise) noise_.emplace(*spec_.seed);
  }

  // One call per sample, in order; noise is drawn on every sample so the
  // stream does not depend on start_time.
  double next(double t) {
    const bool active = t >= spec_.start_time;
    switch (spec_.kind) {
      case SignalKind::Zero:
        return 0.0;
      case SignalKind::Step:
        return active ? spec_.amplitude : 0.0;
      case SignalKind::WhiteNoise: {
        const double z = (*noise_)();
        return active ? spec_.noise_std * z : 0.0;
      }
    }
    return 0.0;
  }

 private:
  SignalSpec spec_;
  std::optional<GaussianNoise> noise_;
};

double rms(const std::vector<double>& v, std::size_t begin, bool remove_mean) {
  const std::size_t count = v.size() - begin;
  if (count == 0) return 0.0;
  double mean = 0.0;
  if (remove_mean) {
    for (std::size_t i = begin; i < v.size(); ++i) mean += v[i];
    mean /= static_cast<double>(count);
  }
  double acc = 0.0;
  for (std::size_t i = begin; i < v.size(); ++i) acc += (v[i] - mean) * (v[i] - mean);
  return std::sqrt(acc / static_cast<double>(count));
}

}  // namespace

SimTrace simulate(const StateSpace& plant, const DiscreteController& dc, const SignalSpec& r, const SignalSpec& d,
                  const SignalSpec& n, double t_final) {
  plant.validate();
  if (plant.inputs() != 1 || plant.outputs() != 1) throw DimensionError("simulate: plant must be SISO");
  if (!(dc.ts > 0.0)) throw ParameterError("simulate: controller sample time must be positive");
  if (!(t_final > 0.0 && std::isfinite(t_final))) throw ParameterError("simulate: t_final must be positive");
  const auto steps = static_cast<std::size_t>(std::llround(t_final / dc.ts));
  if (steps == 0 || std::abs(static_cast<double>(steps) * dc.ts - t_final) > 1e-9 * std::max(1.0, t_final))
    throw ParameterError("simulate: sample time must divide t_final");

  SignalSource r_src(r), d_src(d), n_src(n);
  const auto plant_zoh = zoh(plant.a, plant.b, dc.ts);
  const double plant_d = plant.d(0, 0);
  const std::size_t samples = steps + 1;

  SimTrace tr;
  tr.ts = dc.ts;
  for (auto* col : {&tr.time, &tr.r, &tr.d, &tr.n, &tr.u, &tr.y}) col->resize(samples);
  tr.xhat.resize(static_cast<Eigen::Index>(samples), dc.states());

  Eigen::VectorXd xp = Eigen::VectorXd::Zero(plant.states());
  Eigen::VectorXd xc = Eigen::VectorXd::Zero(dc.states());
  double held = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) * dc.ts;
    const double y = plant.c.row(0).dot(xp) + plant_d * held;
    if (!std::isfinite(y) || std::abs(y) > kDivergenceBound) throw DivergenceError("simulation diverged", t);
    const double rk = r_src.next(t);
    const double dk = d_src.next(t);
    const double nk = n_src.next(t);
    auto step = controller_step(dc, xc, rk, y + nk);

    tr.time[k] = t;
    tr.r[k] = rk;
    tr.d[k] = dk;
    tr.n[k] = nk;
    tr.u[k] = step.u;
    tr.y[k] = y;
    tr.xhat.row(static_cast<Eigen::Index>(k)) = xc.transpose();

    held = step.u + dk;
    xp = plant_zoh.phi * xp + plant_zoh.gamma.col(0) * held;
    xc = std::move(step.next_state);
  }
  return tr;
}

SimTrace simulate(const TransferFunction& plant, const DiscreteController& dc, const SignalSpec& r,
                  const SignalSpec& d, const SignalSpec& n, double t_final) {
  return simulate(to_state_space(plant), dc, r, d, n, t_final);
}

Metrics metrics(const SimTrace& trace, std::optional<double> ref_value) {
  if (trace.size() == 0) throw ParameterError("metrics: empty trace");
  const std::size_t window = static_cast<std::size_t>(std::ceil(kSteadyStateFraction * trace.size()));
  const std::size_t begin = trace.size() - std::max<std::size_t>(window, 1);

  Metrics m;
  m.rms_u = rms(trace.u, begin, true);
  std::vector<double> err(trace.size());
  for (std::size_t i = 0; i < err.size(); ++i) err[i] = trace.y[i] - trace.r[i];
  m.rms_y_err = rms(err, begin, false);

  if (ref_value) {
    const double ref = *ref_value;
    if (ref == 0.0 || !std::isfinite(ref)) throw NormalizationError("metrics: step metrics need a nonzero reference");
    double worst = 0.0;
    for (double y : trace.y) worst = std::max(worst, (y - ref) / ref);
    m.overshoot_pct = 100.0 * worst;
    for (std::size_t i = trace.size(); i-- > 0;) {
      if (std::abs(trace.y[i] - ref) > 0.02 * std::abs(ref)) {
        m.settling_time_2pct = trace.time[i];
        break;
      }
    }
  }
  return m;
}

std::vector<ModeMetrics> noise_sensitivity_study(const TuningConfig& cfg_base, const TransferFunction& plant,
                                                 double noise_std, std::uint64_t seed, double t_final, double ts) {
  if (!(noise_std >= 0.0)) throw ParameterError("noise_sensitivity_study: noise_std must be non-negative");
  const StateSpace plant_ss = to_state_space(plant);
  std::vector<ModeMetrics> out;
  for (Mode mode : kAllModes) {
    TuningConfig cfg = cfg_base;
    cfg.mode = mode;
    const DiscreteController dc = discretize_zoh(build_controller(cfg), ts);
    const SimTrace tr = simulate(plant_ss, dc, SignalSpec::step(1.0), SignalSpec::zero(),
                                 SignalSpec::white_noise(noise_std, seed), t_final);
    out.push_back({mode, metrics(tr, 1.0)});
  }
  return out;
}

}  // namespace halfgain
