#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "halfgain/analysis.hpp"
#include "halfgain/config.hpp"
#include "halfgain/io.hpp"
#include "halfgain/riccati.hpp"
#include "halfgain/sim.hpp"

namespace halfgain {
namespace {

constexpr double kTheoremTolerance = 1e-8;

struct UsageError : Error {
  using Error::Error;
};

struct UnstableLoopError : Error {
  using Error::Error;
};

const std::vector<std::string> kModeChoices{"bw", "half-k", "half-l", "half-kl"};

// Plant and tuning flags shared by every command; flags override --config.
struct CaseFlags {
  std::string config;
  int order = 0;
  double wcl = 0.0, keso = 0.0, b0 = 0.0;
  std::vector<double> num, den;
  CLI::Option* o_order = nullptr;
  CLI::Option* o_wcl = nullptr;
  CLI::Option* o_keso = nullptr;
  CLI::Option* o_b0 = nullptr;
  CLI::Option* o_num = nullptr;
  CLI::Option* o_den = nullptr;

  void attach(CLI::App* app, bool with_plant) {
    app->add_option("--config", config, "JSON case file; flags override its values")->check(CLI::ExistingFile);
    o_order = app->add_option("--order", order, "ADRC order n (plant model b0/s^n)");
    o_wcl = app->add_option("--wcl", wcl, "closed-loop bandwidth omega_CL, rad/s");
    o_keso = app->add_option("--keso", keso, "observer factor k_ESO (omega_o = k_ESO*omega_CL)");
    o_b0 = app->add_option("--b0", b0, "critical gain b0");
    if (with_plant) {
      o_num = app->add_option("--num", num, "plant numerator, descending powers, comma separated")->delimiter(',');
      o_den = app->add_option("--den", den, "plant denominator, descending powers, comma separated")->delimiter(',');
    }
  }

  CaseConfig resolve() const {
    CaseConfig cfg = config.empty() ? CaseConfig{} : load_case_config(config);
    if (o_order->count()) cfg.tuning.order = order;
    if (o_wcl->count()) cfg.tuning.omega_cl = wcl;
    if (o_keso->count()) cfg.tuning.k_eso = keso;
    if (o_b0->count()) cfg.tuning.b0 = b0;
    if ((o_num && o_num->count()) || (o_den && o_den->count()))
      cfg.plant = TransferFunction(o_num->count() ? num : cfg.plant.num().coeffs(),
                                   o_den->count() ? den : cfg.plant.den().coeffs());
    return cfg;
  }
};

// --mode accepting one mode or "all"; unset means the command default.
struct ModeFlag {
  std::string value;
  CLI::Option* opt = nullptr;

  void attach(CLI::App* app, const std::string& help) {
    std::vector<std::string> choices = kModeChoices;
    choices.push_back("all");
    opt = app->add_option("--mode", value, help)->check(CLI::IsMember(choices));
  }

  std::vector<Mode> modes(const TuningConfig& tuning, bool default_all) const {
    const bool all = opt->count() ? value == "all" : default_all;
    if (!all) {
      TuningConfig t = tuning;
      if (opt->count()) t.mode = parse_mode(value);
      t.validate();
      return {t.mode};
    }
    std::vector<Mode> out;
    for (Mode m : kAllModes)
      if (tuning.order >= 2 || !halves_controller(m)) out.push_back(m);
    return out;
  }
};

TuningConfig with_mode(TuningConfig t, Mode m) {
  t.mode = m;
  t.validate();
  return t;
}

std::string suffix(Mode m) { return "_" + std::string(to_string(m)); }

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

void require_stable(const GangOfSix& g, Mode m) {
  if (g.stable()) return;
  std::ostringstream msg;
  msg << "closed loop is unstable for mode " << to_string(m) << "; poles:";
  for (const auto& p : g.poles()) msg << ' ' << format_number(p.real()) << (p.imag() < 0 ? "-" : "+")
                                      << format_number(std::abs(p.imag())) << 'i';
  throw UnstableLoopError(msg.str());
}

double max_relative_deviation(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  return ((got - want).cwiseAbs().array() / want.cwiseAbs().array()).maxCoeff();
}

// --- tune -------------------------------------------------------------------

struct TuneCommand {
  CaseFlags cs;
  std::string mode;
  CLI::Option* o_mode = nullptr;

  void attach(CLI::App* app) {
    cs.attach(app, false);
    o_mode = app->add_option("--mode", mode, "tuning mode")->check(CLI::IsMember(kModeChoices));
  }

  int run(std::ostream& out) const {
    CaseConfig cfg = cs.resolve();
    if (o_mode->count()) cfg.tuning.mode = parse_mode(mode);
    const GainSet g = tune(cfg.tuning);
    const EsoSystem eso = build_eso(cfg.tuning, g);
    Json j;
    j["k"] = to_std(g.k);
    j["l"] = to_std(g.l);
    j["mode"] = std::string(to_string(cfg.tuning.mode));
    j["poles_controller"] = complex_list_json(eigenvalues(chain_state_feedback(g.k).a));
    j["poles_observer"] = complex_list_json(eigenvalues(eso.a - eso.l * eso.c));
    write_json(out, j);
    return kExitOk;
  }
};

// --- verify-theorem ---------------------------------------------------------

struct VerifyCommand {
  int order = 2;
  double alpha = 1.0;
  bool observer = false;

  void attach(CLI::App* app) {
    app->add_option("--order", order, "ADRC order n")->required();
    app->add_option("--alpha", alpha, "decay rate alpha (omega_CL, or k_ESO*omega_CL with --observer)")->required();
    app->add_flag("--observer", observer, "check the observer dual on the (n+1)-order chain");
  }

  int run(std::ostream& out) const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ParameterError("alpha must be positive and finite");
    check_order(order);
    const int chain = observer ? order + 1 : order;
    const auto prob = RiccatiProblem<Quad>::integrator_chain(chain, Quad(alpha));

    const RiccatiSolution<Quad> sol = solve_are(prob);
    const RiccatiSolution<Quad> alt = solve_are(prob, bandwidth_controller_gains<Quad>(chain, Quad(2 * alpha)));

    Eigen::VectorXd oracle = sol.gains.cast<double>();
    Eigen::VectorXd oracle_alt = alt.gains.cast<double>();
    Eigen::VectorXd halved = observer ? half_gain_observer(bandwidth_observer_gains(order, alpha))
                                      : half_gain_controller(bandwidth_controller_gains(order, alpha));
    if (observer) {
      oracle.reverseInPlace();
      oracle_alt.reverseInPlace();
    }
    const Matrix<Quad> closed = prob.a - prob.b * sol.gains.transpose();
    const double decay = static_cast<double>(lyapunov_decay_check(sol.p, closed, prob.alpha) / sol.p.norm());
    const double deviation = max_relative_deviation(oracle, halved);

    Json j;
    j["target"] = observer ? "observer" : "controller";
    j["order"] = order;
    j["chain_order"] = chain;
    j["alpha"] = alpha;
    j["residual"] = static_cast<double>(sol.residual);
    j["iterations"] = sol.iterations;
    j["oracle_gains"] = to_std(oracle);
    j["halved_bandwidth_gains"] = to_std(halved);
    j["max_relative_deviation"] = deviation;
    j["alternative_initializer"] = {{"iterations", alt.iterations},
                                    {"residual", static_cast<double>(alt.residual)},
                                    {"max_relative_deviation", max_relative_deviation(oracle_alt, halved)}};
    j["lyapunov_decay_residual"] = decay;
    j["tolerance"] = kTheoremTolerance;
    j["pass"] = deviation < kTheoremTolerance;
    write_json(out, j);
    return deviation < kTheoremTolerance ? kExitOk : kExitNumerical;
  }
};

// --- bode -------------------------------------------------------------------

struct FrequencyFlags {
  double wmin = 0.0, wmax = 0.0;
  int points = 0;
  CLI::Option *o_wmin = nullptr, *o_wmax = nullptr, *o_points = nullptr;

  void attach(CLI::App* app) {
    o_wmin = app->add_option("--wmin", wmin, "lowest frequency, rad/s");
    o_wmax = app->add_option("--wmax", wmax, "highest frequency, rad/s");
    o_points = app->add_option("--points", points, "log-spaced grid size");
  }

  void apply(FrequencySettings& f) const {
    if (o_wmin->count()) f.omega_min = wmin;
    if (o_wmax->count()) f.omega_max = wmax;
    if (o_points->count()) f.points = points;
  }
};

struct StepFlags {
  double t_final = 0.0, dt = 0.0;
  CLI::Option *o_t_final = nullptr, *o_dt = nullptr;

  void attach(CLI::App* app) {
    o_t_final = app->add_option("--t-final", t_final, "step horizon, s");
    o_dt = app->add_option("--dt", dt, "output sample spacing, s");
  }

  void apply(StepSettings& s) const {
    if (o_t_final->count()) s.t_final = t_final;
    if (o_dt->count()) s.dt = dt;
  }
};

struct BodeCommand {
  CaseFlags cs;
  ModeFlag mode;
  FrequencyFlags freq;

  void attach(CLI::App* app) {
    cs.attach(app, true);
    mode.attach(app, "tuning mode or all (default all)");
    freq.attach(app);
  }

  int run(std::ostream& out) const {
    CaseConfig cfg = cs.resolve();
    freq.apply(cfg.frequency);
    const auto grid = log_grid(cfg.frequency.omega_min, cfg.frequency.omega_max, cfg.frequency.points);
    CsvTable table;
    table.add_column("omega", grid);
    for (Mode m : mode.modes(cfg.tuning, true)) {
      const AdrcController c = build_controller(with_mode(cfg.tuning, m));
      const FrequencyResponse fc = freq_response(controller_feedback_tf(c), grid);
      const FrequencyResponse fl = freq_response(loop_gain(c, cfg.plant), grid);
      std::vector<double> mc(grid.size()), ml(grid.size());
      for (std::size_t i = 0; i < grid.size(); ++i) {
        mc[i] = fc.magnitude(i);
        ml[i] = fl.magnitude(i);
      }
      table.add_column("C_fb_mag" + suffix(m), mc);
      table.add_column("C_fb_phase" + suffix(m), fc.phase_deg());
      table.add_column("G0_mag" + suffix(m), ml);
      table.add_column("G0_phase" + suffix(m), fl.phase_deg());
    }
    table.write(out);
    return kExitOk;
  }
};

// --- gangofsix --------------------------------------------------------------

struct GangCommand {
  CaseFlags cs;
  ModeFlag mode;
  FrequencyFlags freq;
  StepFlags step;
  std::string output = "freq";

  void attach(CLI::App* app) {
    cs.attach(app, true);
    mode.attach(app, "tuning mode or all (default all)");
    app->add_option("--output", output, "freq or step")->check(CLI::IsMember({"freq", "step"}));
    freq.attach(app);
    step.attach(app);
  }

  int run(std::ostream& out) const {
    CaseConfig cfg = cs.resolve();
    freq.apply(cfg.frequency);
    step.apply(cfg.step);
    const std::vector<Mode> modes = mode.modes(cfg.tuning, true);
    std::vector<GangOfSix> loops;
    for (Mode m : modes) {
      loops.push_back(gang_of_six(build_controller(with_mode(cfg.tuning, m)), cfg.plant));
      require_stable(loops.back(), m);
    }

    CsvTable table;
    if (output == "freq") {
      const auto grid = log_grid(cfg.frequency.omega_min, cfg.frequency.omega_max, cfg.frequency.points);
      table.add_column("omega", grid);
      for (std::size_t i = 0; i < modes.size(); ++i)
        for (GangMember g : kGangMembers) {
          const FrequencyResponse fr = freq_response(loops[i][g], grid);
          std::vector<double> mag(grid.size());
          for (std::size_t k = 0; k < grid.size(); ++k) mag[k] = fr.magnitude(k);
          const std::string name(to_string(g));
          table.add_column(name + "_mag" + suffix(modes[i]), mag);
          table.add_column(name + "_phase" + suffix(modes[i]), fr.phase_deg());
        }
    } else {
      for (std::size_t i = 0; i < modes.size(); ++i)
        for (int input = 0; input < 3; ++input) {
          const StepResponse s = step_response(loops[i].closed_loop, input, cfg.step.t_final, cfg.step.dt);
          if (table.cols() == 0) table.add_column("time", s.time);
          for (GangMember g : kGangMembers) {
            if (GangOfSix::input_of(g) != input) continue;
            const Eigen::VectorXd col = s.outputs.col(GangOfSix::output_of(g));
            table.add_column(std::string(to_string(g)) + suffix(modes[i]), to_std(col));
          }
        }
    }
    table.write(out);
    return kExitOk;
  }
};

// --- step -------------------------------------------------------------------

struct StepCommand {
  CaseFlags cs;
  StepFlags step;

  void attach(CLI::App* app) {
    cs.attach(app, false);
    step.attach(app);
  }

  int run(std::ostream& out) const {
    CaseConfig cfg = cs.resolve();
    step.apply(cfg.step);
    cfg.tuning.mode = Mode::Bandwidth;
    cfg.tuning.validate();
    const Eigen::VectorXd k = bandwidth_controller_gains(cfg.tuning.order, cfg.tuning.omega_cl);
    const StepResponse bw = step_response(chain_state_feedback(k), 0, cfg.step.t_final, cfg.step.dt);
    const StepResponse half =
        step_response(chain_state_feedback(half_gain_controller(k)), 0, cfg.step.t_final, cfg.step.dt);
    CsvTable table;
    table.add_column("time", bw.time);
    table.add_column("y_bw", to_std(bw.outputs.col(0)));
    table.add_column("y_half", to_std(half.outputs.col(0)));
    table.write(out);
    return kExitOk;
  }
};

// --- simulate ---------------------------------------------------------------

struct SimulateCommand {
  CaseFlags cs;
  ModeFlag mode;
  double ts = 0.0, t_final = 0.0, noise_std = 0.0;
  std::uint64_t seed = 0;
  std::string trace_path, metrics_path;
  CLI::Option *o_ts = nullptr, *o_t_final = nullptr, *o_noise = nullptr, *o_seed = nullptr;

  void attach(CLI::App* app) {
    cs.attach(app, true);
    mode.attach(app, "tuning mode or all (default: the configured mode)");
    o_ts = app->add_option("--ts", ts, "controller sample time, s");
    o_t_final = app->add_option("--t-final", t_final, "simulation horizon, s");
    o_noise = app->add_option("--noise-std", noise_std, "white measurement noise standard deviation");
    o_seed = app->add_option("--seed", seed, "noise seed");
    app->add_option("--trace", trace_path, "write the sample trace CSV to this file (single mode only)");
    app->add_option("--metrics", metrics_path, "write metrics JSON to this file instead of stdout");
  }

  int run(std::ostream& out) const {
    CaseConfig cfg = cs.resolve();
    SimulationSettings& sim = cfg.simulation;
    if (o_ts->count()) sim.ts = ts;
    if (o_t_final->count()) sim.t_final = t_final;
    if (o_noise->count() || o_seed->count()) {
      const std::optional<std::uint64_t> s = o_seed->count() ? std::optional(seed) : sim.noise.seed;
      if (!s) throw UsageError("--noise-std needs --seed (or a seed in the config noise entry)");
      sim.noise = SignalSpec::white_noise(o_noise->count() ? noise_std : sim.noise.noise_std, *s, sim.noise.start_time);
    }
    const std::vector<Mode> modes = mode.modes(cfg.tuning, false);
    if (modes.size() > 1 && !trace_path.empty()) throw UsageError("--trace needs a single --mode");

    const std::optional<double> ref = sim.reference.kind == SignalKind::Step && sim.reference.amplitude != 0.0
                                          ? std::optional(sim.reference.amplitude)
                                          : std::nullopt;
    Json report = Json::array();
    for (Mode m : modes) {
      const DiscreteController dc = discretize_zoh(build_controller(with_mode(cfg.tuning, m)), sim.ts);
      const SimTrace trace = simulate(cfg.plant, dc, sim.reference, sim.disturbance, sim.noise, sim.t_final);
      if (!trace_path.empty()) {
        std::ofstream f(trace_path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + trace_path);
        trace_table(trace).write(f);
      }
      Json entry;
      entry["mode"] = std::string(to_string(m));
      entry.update(to_json(metrics(trace, ref)));
      report.push_back(entry);
    }
    const Json& doc = modes.size() == 1 ? report[0] : report;
    if (metrics_path.empty()) {
      write_json(out, doc);
    } else {
      std::ofstream f(metrics_path, std::ios::binary);
      if (!f) throw UsageError("cannot write " + metrics_path);
      write_json(f, doc);
    }
    return kExitOk;
  }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Linear ADRC half-gain tuning: gains, Riccati check, frequency and time responses"};
  app.name("halfgain");
  app.set_help_all_flag("--help-all", "print help for every command");
  app.require_subcommand(1);
  app.allow_extras(false);

  TuneCommand tune_cmd;
  VerifyCommand verify_cmd;
  BodeCommand bode_cmd;
  GangCommand gang_cmd;
  StepCommand step_cmd;
  SimulateCommand sim_cmd;
  CLI::App* tune_app = app.add_subcommand("tune", "print bandwidth or half-gain ADRC gains and poles as JSON");
  CLI::App* verify_app = app.add_subcommand("verify-theorem", "compare Riccati-derived gains with halved bandwidth gains");
  CLI::App* bode_app = app.add_subcommand("bode", "CSV of controller and loop-gain frequency responses");
  CLI::App* gang_app = app.add_subcommand("gangofsix", "CSV of the six closed-loop transfer functions");
  CLI::App* step_app = app.add_subcommand("step", "CSV of integrator-chain step responses, bandwidth vs half gains");
  CLI::App* sim_app = app.add_subcommand("simulate", "sampled closed-loop simulation; metrics JSON, optional trace CSV");
  tune_cmd.attach(tune_app);
  verify_cmd.attach(verify_app);
  bode_cmd.attach(bode_app);
  gang_cmd.attach(gang_app);
  step_cmd.attach(step_app);
  sim_cmd.attach(sim_app);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (tune_app->parsed()) return tune_cmd.run(out);
    if (verify_app->parsed()) return verify_cmd.run(out);
    if (bode_app->parsed()) return bode_cmd.run(out);
    if (gang_app->parsed()) return gang_cmd.run(out);
    if (step_app->parsed()) return step_cmd.run(out);
    return sim_cmd.run(out);
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace halfgain
