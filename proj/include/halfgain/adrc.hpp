#pragma once

#include "halfgain/linalg.hpp"
#include "halfgain/tuning.hpp"

namespace halfgain {

/// Extended state observer for the chain b0/sⁿ plus one constant-disturbance state.
struct EsoSystem {
  Eigen::MatrixXd a;     // (n+1)×(n+1) upper shift
  Eigen::VectorXd b;     // b0 at row n
  Eigen::RowVectorXd c;  // e_1ᵀ
  Eigen::VectorXd l;

  int order() const { return static_cast<int>(a.rows()) - 1; }
};

/// Observer and control law composed into one LTI system with inputs (r, y)
/// and output u:
///
///   x̂' = a x̂ + b_r r + b_y y
///   u  = c_u x̂ + d_r r + d_y y
struct AdrcController {
  Eigen::MatrixXd a;
  Eigen::VectorXd b_r;
  Eigen::VectorXd b_y;
  Eigen::RowVectorXd c_u;
  double d_r = 0.0;
  double d_y = 0.0;
  double observer_bandwidth = 0.0;  // k_ESO·ω_CL, for sample-time checks

  int states() const { return static_cast<int>(a.rows()); }
};

/// ZOH discretization of an AdrcController.
struct DiscreteController {
  Eigen::MatrixXd ad;
  Eigen::VectorXd bd_r;
  Eigen::VectorXd bd_y;
  Eigen::RowVectorXd c;
  double d_r = 0.0;
  double d_y = 0.0;
  double ts = 0.0;

  int states() const { return static_cast<int>(ad.rows()); }
};

struct ControllerStep {
  double u;
  Eigen::VectorXd next_state;
};

EsoSystem build_eso(const TuningConfig& cfg, const GainSet& gains);

AdrcController build_controller(const TuningConfig& cfg, const GainSet& gains);

/// Convenience: tune() followed by build_controller().
AdrcController build_controller(const TuningConfig& cfg);

/// Largest sample time giving 10× oversampling of the observer bandwidth.
double recommended_max_sample_time(const AdrcController& ctrl);

DiscreteController discretize_zoh(const AdrcController& ctrl, double ts);

ControllerStep controller_step(const DiscreteController& dc, const Eigen::VectorXd& state, double r, double y);

}  // namespace halfgain
