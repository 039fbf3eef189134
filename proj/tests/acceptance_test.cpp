// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "halfgain/analysis.hpp"
#include "halfgain/io.hpp"
#include "halfgain/sim.hpp"

using namespace halfgain;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

Json CliJson(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return code == kExitUsage ? Json{} : Json::parse(out.str());
}

std::string Fmt(double v) { return format_number(v); }

const TransferFunction kPlant{std::vector<double>{1.0}, std::vector<double>{1.0, 2.0, 1.0}};

Verdict RiccatiEquivalence() {
  const auto start = std::chrono::steady_clock::now();
  double worst_dev = 0.0, worst_res = 0.0;
  bool ok = true;
  for (int n = 2; n <= 6; ++n)
    for (double alpha : {0.5, 1.0, 2.0, 10.0}) {
      int code = 0;
      const Json j = CliJson({"verify-theorem", "--order", std::to_string(n), "--alpha", Fmt(alpha)}, code);
      if (code != kExitOk) {
        ok = false;
        continue;
      }
      worst_dev = std::max(worst_dev, j["max_relative_deviation"].get<double>());
      worst_res = std::max(worst_res, j["residual"].get<double>());
    }
  const double elapsed = Seconds(start);
  ok = ok && worst_dev < 1e-8 && worst_res < 1e-10 && elapsed < 1.0;
  return {ok, "max deviation " + Fmt(worst_dev) + ", max residual " + Fmt(worst_res) + ", " + Fmt(elapsed) + " s"};
}

Verdict ObserverDuality() {
  double worst = 0.0;
  bool ok = true;
  for (int n = 1; n <= 5; ++n)
    for (auto [wcl, keso] : {std::pair{1.0, 10.0}, std::pair{0.5, 4.0}, std::pair{2.0, 3.0}}) {
      int code = 0;
      const Json j = CliJson({"verify-theorem", "--order", std::to_string(n), "--alpha", Fmt(wcl * keso), "--observer"}, code);
      if (code != kExitOk) {
        ok = false;
        continue;
      }
      worst = std::max(worst, j["max_relative_deviation"].get<double>());
    }
  return {ok && worst < 1e-8, "max deviation " + Fmt(worst)};
}

double NearestDistance(const ComplexList& poles, std::complex<double> want) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : poles) best = std::min(best, std::abs(p - want));
  return best;
}

Verdict PoleConfigurations() {
  auto poles = [](int n) { return eigenvalues(chain_state_feedback(half_gain_controller(bandwidth_controller_gains(n, 1.0))).a); };
  double worst = 0.0;
  const ComplexList p2 = poles(2), p3 = poles(3);
  for (auto want : {std::complex(-0.5, 0.5), std::complex(-0.5, -0.5)}) worst = std::max(worst, NearestDistance(p2, want));
  const double w = std::sqrt(3.0) / 2.0;
  for (auto want : {std::complex(-0.5, 0.0), std::complex(-0.5, w), std::complex(-0.5, -w)})
    worst = std::max(worst, NearestDistance(p3, want));
  for (int n : {4, 5})
    for (const auto& p : poles(n)) worst = std::max(worst, std::abs(p.real() + 0.5));
  return {worst < 1e-8, "max pole error " + Fmt(worst)};
}

Verdict BandwidthPlacement() {
  double worst = 0.0;
  for (auto [wcl, keso] : {std::pair{1.0, 10.0}, std::pair{2.0, 5.0}, std::pair{0.5, 3.0}})
    for (int n = 1; n <= 6; ++n) {
      const Polynomial<double> ctrl = charpoly(chain_state_feedback(bandwidth_controller_gains(n, wcl)).a);
      const Polynomial<double> want_ctrl = Polynomial<double>::binomial_power(wcl, n);
      for (int i = 0; i <= n; ++i) worst = std::max(worst, std::abs(ctrl.coeff(i) - want_ctrl.coeff(i)));

      const TuningConfig cfg{n, wcl, keso, 1.0, Mode::Bandwidth};
      const EsoSystem eso = build_eso(cfg, tune(cfg));
      const Polynomial<double> obs = charpoly(Eigen::MatrixXd(eso.a - eso.l * eso.c));
      const Polynomial<double> want_obs = Polynomial<double>::binomial_power(cfg.observer_bandwidth(), n + 1);
      for (int i = 0; i <= n + 1; ++i) worst = std::max(worst, std::abs(obs.coeff(i) - want_obs.coeff(i)));
    }
  return {worst < 1e-9, "max coefficient error " + Fmt(worst)};
}

Verdict ExampleLoop() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double dc_err = 0.0;
  std::array<double, 4> un{};
  for (Mode m : kAllModes) {
    const GangOfSix g = gang_of_six(build_controller({2, 1.0, 10.0, 1.0, m}), kPlant);
    ok = ok && g.stable();
    dc_err = std::max({dc_err, std::abs(g.g_yr()(0.0) - 1.0), std::abs(g.g_yd()(0.0)), std::abs(g.g_ud()(0.0) + 1.0)});
    un[static_cast<std::size_t>(m)] = std::abs(g.g_un()(std::complex(0.0, 100.0)));
  }
  const double elapsed = Seconds(start);
  const double bw = un[0], half_k = un[1], half_l = un[2], half_kl = un[3];
  ok = ok && dc_err < 1e-6 && half_kl <= half_l && half_l < bw && half_k < bw && elapsed < 2.0;
  return {ok, "DC error " + Fmt(dc_err) + ", |G_un(j100)| bw " + Fmt(bw) + " half-k " + Fmt(half_k) + " half-l " +
                  Fmt(half_l) + " half-kl " + Fmt(half_kl) + ", " + Fmt(elapsed) + " s"};
}

Verdict Underdamping() {
  bool ok = true;
  std::string detail;
  for (int n : {2, 3}) {
    const Eigen::VectorXd k = bandwidth_controller_gains(n, 1.0);
    const double bw = step_response(chain_state_feedback(k), 0, 40.0, 1e-3).outputs.maxCoeff();
    const double half = step_response(chain_state_feedback(half_gain_controller(k)), 0, 40.0, 1e-3).outputs.maxCoeff();
    const double bw_pct = std::max(0.0, (bw - 1.0) * 100.0);
    const double half_pct = std::max(0.0, (half - 1.0) * 100.0);
    const bool n_ok = half_pct > 0.0 && bw_pct < 0.1;
    ok = ok && n_ok;
    detail += "n=" + std::to_string(n) + ": half " + Fmt(half_pct) + " %, bw " + Fmt(bw_pct) + " %" +
              (n_ok ? "" : " (half-gain step is monotone)") + "; ";
  }
  return {ok, detail.substr(0, detail.size() - 2)};
}

Verdict NoiseReduction() {
  int half_l = 0, half_kl = 0;
  std::string seeds;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto res = noise_sensitivity_study({2, 1.0, 10.0, 1.0, Mode::Bandwidth}, kPlant, 0.01, seed, 20.0, 1e-3);
    const bool a = res[2].metrics.rms_u < res[0].metrics.rms_u;
    const bool b = res[3].metrics.rms_u <= res[2].metrics.rms_u;
    half_l += a;
    half_kl += b;
    std::printf("       seed %2llu  rms_u bw %s half-l %s half-kl %s\n", static_cast<unsigned long long>(seed),
                Fmt(res[0].metrics.rms_u).c_str(), Fmt(res[2].metrics.rms_u).c_str(), Fmt(res[3].metrics.rms_u).c_str());
  }
  return {half_l >= 18 && half_kl >= 18,
          "half-l < bw in " + std::to_string(half_l) + "/20, half-kl <= half-l in " + std::to_string(half_kl) + "/20"};
}

Verdict LtiExactness() {
  double dt_err = 0.0, lin_err = 0.0, sup_err = 0.0;
  for (Mode m : kAllModes) {
    const AdrcController c = build_controller({2, 1.0, 10.0, 1.0, m});
    const GangOfSix g = gang_of_six(c, kPlant);
    for (int input = 0; input < 3; ++input) {
      const StepResponse coarse = step_response(g.closed_loop, input, 20.0, 0.02);
      const StepResponse fine = step_response(g.closed_loop, input, 20.0, 0.01);
      for (Eigen::Index k = 0; k < coarse.outputs.rows(); ++k)
        dt_err = std::max(dt_err, (coarse.outputs.row(k) - fine.outputs.row(2 * k)).cwiseAbs().maxCoeff());
    }
    const DiscreteController dc = discretize_zoh(c, 1e-3);
    const auto zero = SignalSpec::zero();
    const auto r1 = simulate(kPlant, dc, SignalSpec::step(1.0), zero, zero, 10.0);
    const auto r2 = simulate(kPlant, dc, SignalSpec::step(2.0), zero, zero, 10.0);
    const auto d = SignalSpec::step(-0.5, 3.0);
    const auto n = SignalSpec::white_noise(0.01, 5);
    const auto both = simulate(kPlant, dc, SignalSpec::step(1.0), d, n, 10.0);
    const auto d_only = simulate(kPlant, dc, zero, d, zero, 10.0);
    const auto n_only = simulate(kPlant, dc, zero, zero, n, 10.0);
    for (std::size_t k = 0; k < r1.size(); ++k) {
      lin_err = std::max({lin_err, std::abs(r2.y[k] - 2 * r1.y[k]), std::abs(r2.u[k] - 2 * r1.u[k])});
      sup_err = std::max({sup_err, std::abs(both.y[k] - r1.y[k] - d_only.y[k] - n_only.y[k]),
                          std::abs(both.u[k] - r1.u[k] - d_only.u[k] - n_only.u[k])});
    }
  }
  return {dt_err < 1e-6 && lin_err < 1e-9 && sup_err < 1e-8,
          "dt halving " + Fmt(dt_err) + ", linearity " + Fmt(lin_err) + ", superposition " + Fmt(sup_err)};
}

Verdict IntegralAction() {
  double col = 0.0, eig = 0.0;
  for (int n = 1; n <= 5; ++n)
    for (Mode m : kAllModes) {
      if (n < 2 && halves_controller(m)) continue;
      for (auto [wcl, keso, b0] : {std::tuple{1.0, 10.0, 1.0}, std::tuple{3.0, 4.0, -2.0}}) {
        const AdrcController c = build_controller({n, wcl, keso, b0, m});
        col = std::max(col, c.a.col(c.states() - 1).cwiseAbs().maxCoeff());
        double smallest = std::numeric_limits<double>::infinity();
        for (const auto& ev : eigenvalues(c.a)) smallest = std::min(smallest, std::abs(ev));
        eig = std::max(eig, smallest);
      }
    }
  return {col == 0.0 && eig < 1e-10, "max |last column| " + Fmt(col) + ", max smallest |lambda| " + Fmt(eig)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"Riccati oracle equivalence", RiccatiEquivalence},
      {"Observer duality", ObserverDuality},
      {"Half-gain pole configurations", PoleConfigurations},
      {"Bandwidth pole placement", BandwidthPlacement},
      {"Example loop reproduction", ExampleLoop},
      {"Underdamping of half-gain state feedback", Underdamping},
      {"Noise reduction over 20 seeds", NoiseReduction},
      {"LTI exactness", LtiExactness},
      {"Structural integral action", IntegralAction},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("[%s] %d %s: %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
