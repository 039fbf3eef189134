#include "halfgain/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>

namespace halfgain {

namespace {

void reject_unknown(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items())
    if (!keys.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const Json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

int integer(const Json& obj, const char* key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<double> coefficients(const Json& obj, const char* key, const std::string& where) {
  const Json& v = obj.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + "." + key + ": expected a non-empty number list");
  std::vector<double> out;
  for (const auto& c : v) {
    if (!c.is_number()) throw ConfigError(where + "." + key + ": expected numbers");
    out.push_back(c.get<double>());
  }
  return out;
}

SignalSpec parse_signal(const Json& obj, const std::string& where, SignalSpec base) {
  reject_unknown(obj, where, {"kind", "amplitude", "start_time", "noise_std", "seed"});
  SignalSpec s = base;
  if (obj.contains("kind")) {
    if (!obj["kind"].is_string()) throw ConfigError(where + ".kind: expected a string");
    s = SignalSpec{};
    s.kind = parse_signal_kind(obj["kind"].get<std::string>());
  }
  s.amplitude = number(obj, "amplitude", where, s.amplitude);
  s.start_time = number(obj, "start_time", where, s.start_time);
  s.noise_std = number(obj, "noise_std", where, s.noise_std);
  if (obj.contains("seed")) {
    const Json& v = obj["seed"];
    if (!v.is_number_unsigned()) throw ConfigError(where + ".seed: expected a non-negative integer");
    s.seed = v.get<std::uint64_t>();
  }
  s.validate();
  return s;
}

Json signal_json(const SignalSpec& s) {
  Json j;
  j["kind"] = std::string(to_string(s.kind));
  if (s.kind == SignalKind::Step) j["amplitude"] = s.amplitude;
  j["start_time"] = s.start_time;
  if (s.kind == SignalKind::WhiteNoise) {
    j["noise_std"] = s.noise_std;
    if (s.seed) j["seed"] = *s.seed;
  }
  return j;
}

}  // namespace

CaseConfig parse_case_config(const Json& doc, CaseConfig base) {
  CaseConfig cfg = std::move(base);
  try {
    reject_unknown(doc, "config", {"plant", "tuning", "frequency", "step", "simulation"});
    if (doc.contains("plant")) {
      const Json& p = doc["plant"];
      reject_unknown(p, "plant", {"num", "den"});
      if (!p.contains("num") || !p.contains("den")) throw ConfigError("plant: needs both num and den");
      cfg.plant = TransferFunction(coefficients(p, "num", "plant"), coefficients(p, "den", "plant"));
      if (!cfg.plant.is_proper()) throw ConfigError("plant: transfer function must be proper");
    }
    if (doc.contains("tuning")) {
      const Json& t = doc["tuning"];
      reject_unknown(t, "tuning", {"order", "wcl", "keso", "b0", "mode"});
      cfg.tuning.order = integer(t, "order", "tuning", cfg.tuning.order);
      cfg.tuning.omega_cl = number(t, "wcl", "tuning", cfg.tuning.omega_cl);
      cfg.tuning.k_eso = number(t, "keso", "tuning", cfg.tuning.k_eso);
      cfg.tuning.b0 = number(t, "b0", "tuning", cfg.tuning.b0);
      if (t.contains("mode")) {
        if (!t["mode"].is_string()) throw ConfigError("tuning.mode: expected a string");
        cfg.tuning.mode = parse_mode(t["mode"].get<std::string>());
      }
    }
    if (doc.contains("frequency")) {
      const Json& f = doc["frequency"];
      reject_unknown(f, "frequency", {"wmin", "wmax", "points"});
      cfg.frequency.omega_min = number(f, "wmin", "frequency", cfg.frequency.omega_min);
      cfg.frequency.omega_max = number(f, "wmax", "frequency", cfg.frequency.omega_max);
      cfg.frequency.points = integer(f, "points", "frequency", cfg.frequency.points);
    }
    if (doc.contains("step")) {
      const Json& s = doc["step"];
      reject_unknown(s, "step", {"t_final", "dt"});
      cfg.step.t_final = number(s, "t_final", "step", cfg.step.t_final);
      cfg.step.dt = number(s, "dt", "step", cfg.step.dt);
    }
    if (doc.contains("simulation")) {
      const Json& s = doc["simulation"];
      reject_unknown(s, "simulation", {"ts", "t_final", "reference", "disturbance", "noise"});
      auto& sim = cfg.simulation;
      sim.ts = number(s, "ts", "simulation", sim.ts);
      sim.t_final = number(s, "t_final", "simulation", sim.t_final);
      if (s.contains("reference")) sim.reference = parse_signal(s["reference"], "simulation.reference", sim.reference);
      if (s.contains("disturbance"))
        sim.disturbance = parse_signal(s["disturbance"], "simulation.disturbance", sim.disturbance);
      if (s.contains("noise")) sim.noise = parse_signal(s["noise"], "simulation.noise", sim.noise);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

CaseConfig load_case_config(const std::string& path, CaseConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_case_config(doc, std::move(base));
}

Json to_json(const CaseConfig& cfg) {
  Json j;
  j["plant"]["num"] = cfg.plant.num().coeffs();
  j["plant"]["den"] = cfg.plant.den().coeffs();
  j["tuning"] = {{"order", cfg.tuning.order},
                 {"wcl", cfg.tuning.omega_cl},
                 {"keso", cfg.tuning.k_eso},
                 {"b0", cfg.tuning.b0},
                 {"mode", std::string(to_string(cfg.tuning.mode))}};
  j["frequency"] = {{"wmin", cfg.frequency.omega_min}, {"wmax", cfg.frequency.omega_max}, {"points", cfg.frequency.points}};
  j["step"] = {{"t_final", cfg.step.t_final}, {"dt", cfg.step.dt}};
  j["simulation"]["ts"] = cfg.simulation.ts;
  j["simulation"]["t_final"] = cfg.simulation.t_final;
  j["simulation"]["reference"] = signal_json(cfg.simulation.reference);
  j["simulation"]["disturbance"] = signal_json(cfg.simulation.disturbance);
  j["simulation"]["noise"] = signal_json(cfg.simulation.noise);
  return j;
}

}  // namespace halfgain
