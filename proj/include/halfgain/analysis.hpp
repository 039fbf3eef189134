#pragma once

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "halfgain/adrc.hpp"
#include "halfgain/state_space.hpp"

namespace halfgain {

struct FrequencyResponse {
  std::vector<double> omegas;  // rad/s, strictly increasing
  std::vector<std::complex<double>> values;

  double magnitude(std::size_t i) const { return std::abs(values[i]); }
  /// Phase in degrees, unwrapped along the grid starting from the principal value.
  std::vector<double> phase_deg() const;
};

/// `points` log-spaced frequencies from omega_min to omega_max inclusive.
std::vector<double> log_grid(double omega_min, double omega_max, int points);

FrequencyResponse freq_response(const TransferFunction& tf, const std::vector<double>& omegas);
FrequencyResponse freq_response(const TransferFunction& tf, double omega_min, double omega_max, int points);

/// The controller as a state space with inputs (r, y) and output u.
StateSpace controller_state_space(const AdrcController& ctrl);

/// y → u map of the controller with r = 0.
TransferFunction controller_feedback_tf(const AdrcController& ctrl);

/// G0 = (−C_yu)·P, so that the closed loop reads 1/(1 + G0).
TransferFunction loop_gain(const AdrcController& ctrl, const TransferFunction& plant);

/// Lowest frequency in [omega_min, omega_max] with |G(jω)| = 1, by bisection
/// on a log grid. Throws ParameterError if there is none.
double crossover_frequency(const TransferFunction& g, double omega_min, double omega_max);

enum class GangMember { Yr, Yd, Yn, Ur, Ud, Un };

inline constexpr GangMember kGangMembers[] = {GangMember::Yr, GangMember::Yd, GangMember::Yn,
                                              GangMember::Ur, GangMember::Ud, GangMember::Un};

std::string_view to_string(GangMember m);

/// Closed loop with plant input u + d and measured output y + n.
/// `closed_loop` has inputs (r, d, n) and outputs (y, u).
struct GangOfSix {
  StateSpace closed_loop;
  std::array<TransferFunction, 6> members;

  const TransferFunction& operator[](GangMember m) const { return members[static_cast<std::size_t>(m)]; }
  const TransferFunction& g_yr() const { return (*this)[GangMember::Yr]; }
  const TransferFunction& g_yd() const { return (*this)[GangMember::Yd]; }
  const TransferFunction& g_yn() const { return (*this)[GangMember::Yn]; }
  const TransferFunction& g_ur() const { return (*this)[GangMember::Ur]; }
  const TransferFunction& g_ud() const { return (*this)[GangMember::Ud]; }
  const TransferFunction& g_un() const { return (*this)[GangMember::Un]; }

  static int output_of(GangMember m) { return static_cast<int>(m) / 3; }
  static int input_of(GangMember m) { return static_cast<int>(m) % 3; }

  ComplexList poles() const { return closed_loop.poles(); }
  bool stable() const { return is_stable(closed_loop); }
};

GangOfSix gang_of_six(const AdrcController& ctrl, const StateSpace& plant);
GangOfSix gang_of_six(const AdrcController& ctrl, const TransferFunction& plant);

struct StepResponse {
  std::vector<double> time;
  Eigen::MatrixXd outputs;  // samples × outputs
  std::vector<std::string> output_names;

  Eigen::VectorXd output(int i) const { return outputs.col(i); }
};

/// Unit step on one input, sampled every dt from 0 to t_final, stepped with
/// the exact ZOH transition (the input is constant, so sampling is exact).
StepResponse step_response(const StateSpace& ss, int input, double t_final, double dt);
StepResponse step_response(const TransferFunction& tf, double t_final, double dt);

/// Integrator chain under full state feedback u = k1 r − kᵀx, output x1.
StateSpace chain_state_feedback(const Eigen::VectorXd& k);

}  // namespace halfgain
