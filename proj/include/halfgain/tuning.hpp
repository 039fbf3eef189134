#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "halfgain/linalg.hpp"

namespace halfgain {

/// Largest order accepted by the gain formulas; binomial coefficients are
/// exact integers up to here.
inline constexpr int kMaxOrder = 20;

enum class Mode { Bandwidth, HalfK, HalfL, HalfKL };

inline constexpr Mode kAllModes[] = {Mode::Bandwidth, Mode::HalfK, Mode::HalfL, Mode::HalfKL};

std::string_view to_string(Mode mode);
/// Accepts "bw", "half-k", "half-l", "half-kl".
Mode parse_mode(std::string_view text);

inline bool halves_controller(Mode m) { return m == Mode::HalfK || m == Mode::HalfKL; }
inline bool halves_observer(Mode m) { return m == Mode::HalfL || m == Mode::HalfKL; }

struct TuningConfig {
  int order = 2;
  double omega_cl = 1.0;  // rad/s
  double k_eso = 10.0;
  double b0 = 1.0;
  Mode mode = Mode::Bandwidth;

  double observer_bandwidth() const { return k_eso * omega_cl; }
  /// Throws ParameterError / OrderError / ModeError.
  void validate() const;
};

struct GainSet {
  Eigen::VectorXd k;  // controller, length n
  Eigen::VectorXd l;  // observer, length n+1
};

/// C(n, k) in exact integer arithmetic.
std::uint64_t binomial(int n, int k);

inline void check_order(int n) {
  if (n < 1) throw OrderError("order must be >= 1, got " + std::to_string(n));
  if (n > kMaxOrder) throw OrderError("order exceeds " + std::to_string(kMaxOrder) + ", got " + std::to_string(n));
}

/// Integrator chain x' = A x + b u of order n: A is the upper shift matrix, b = e_n.
template <typename Scalar = double>
struct IntegratorChain {
  Matrix<Scalar> a;
  Vector<Scalar> b;

  explicit IntegratorChain(int n) : a(Matrix<Scalar>::Zero(n, n)), b(Vector<Scalar>::Zero(n)) {
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = Scalar(1);
    if (n > 0) b(n - 1) = Scalar(1);
  }
};

/// Gains placing all n poles of A − b kᵀ at −omega:
/// k_i = n! / ((n−i+1)! (i−1)!) · omega^(n−i+1).
template <typename Scalar = double>
Vector<Scalar> bandwidth_controller_gains(int n, Scalar omega) {
  check_order(n);
  if (!(omega > Scalar(0))) throw ParameterError("bandwidth must be positive");
  Vector<Scalar> k(n);
  for (int i = 1; i <= n; ++i) {
    Scalar power(1);
    for (int j = 0; j < n - i + 1; ++j) power *= omega;
    k(i - 1) = Scalar(binomial(n, i - 1)) * power;
  }
  return k;
}

/// Gains placing all n+1 poles of A_ESO − l cᵀ at −omega_obs:
/// l_i = (n+1)! / ((n+1−i)! i!) · omega_obs^i.
template <typename Scalar = double>
Vector<Scalar> bandwidth_observer_gains(int n, Scalar omega_obs) {
  check_order(n);
  if (!(omega_obs > Scalar(0))) throw ParameterError("observer bandwidth must be positive");
  Vector<Scalar> l(n + 1);
  Scalar power(1);
  for (int i = 1; i <= n + 1; ++i) {
    power *= omega_obs;
    l(i - 1) = Scalar(binomial(n + 1, i)) * power;
  }
  return l;
}

Eigen::VectorXd half_gain_controller(const Eigen::VectorXd& k_bw);
Eigen::VectorXd half_gain_observer(const Eigen::VectorXd& l_bw);

/// Gains for one of the four tuning combinations.
GainSet tune(const TuningConfig& cfg);

}  // namespace halfgain
