#pragma once

#include <string>

#include "halfgain/io.hpp"
#include "halfgain/sim.hpp"
#include "halfgain/state_space.hpp"
#include "halfgain/tuning.hpp"

namespace halfgain {

struct FrequencySettings {
  double omega_min = 1e-2;
  double omega_max = 1e3;
  int points = 400;
};

struct StepSettings {
  double t_final = 20.0;
  double dt = 1e-2;
};

struct SimulationSettings {
  double ts = 1e-3;
  double t_final = 20.0;
  SignalSpec reference = SignalSpec::step(1.0);
  SignalSpec disturbance = SignalSpec::zero();
  SignalSpec noise = SignalSpec::zero();
};

/// One complete study: plant, tuning, and the settings of every CLI command.
/// Defaults reproduce the example plant 1/(s²+2s+1) with ω_CL = 1,
/// k_ESO = 10, b0 = 1.
struct CaseConfig {
  TransferFunction plant{std::vector<double>{1.0}, std::vector<double>{1.0, 2.0, 1.0}};
  TuningConfig tuning;
  FrequencySettings frequency;
  StepSettings step;
  SimulationSettings simulation;
};

/// Overlays the keys present in `doc` onto `base`. Unknown keys, wrong types
/// and invalid values throw ConfigError.
CaseConfig parse_case_config(const Json& doc, CaseConfig base = {});
CaseConfig load_case_config(const std::string& path, CaseConfig base = {});

Json to_json(const CaseConfig& cfg);

}  // namespace halfgain
