#include "halfgain/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace halfgain {

void StateSpace::validate() const {
  const auto n = a.rows();
  if (a.cols() != n) throw DimensionError("state space: A must be square");
  if (b.rows() != n) throw DimensionError("state space: B row count differs from A");
  if (c.cols() != n) throw DimensionError("state space: C column count differs from A");
  if (d.rows() != c.rows() || d.cols() != b.cols()) throw DimensionError("state space: D shape mismatch");
  if (!input_names.empty() && static_cast<Eigen::Index>(input_names.size()) != b.cols())
    throw DimensionError("state space: input name count mismatch");
  if (!output_names.empty() && static_cast<Eigen::Index>(output_names.size()) != c.rows())
    throw DimensionError("state space: output name count mismatch");
  require_finite(a, "A");
  require_finite(b, "B");
  require_finite(c, "C");
  require_finite(d, "D");
}

int StateSpace::input_index(const std::string& name) const {
  const auto it = std::find(input_names.begin(), input_names.end(), name);
  if (it == input_names.end()) throw DimensionError("state space: no input named '" + name + "'");
  return static_cast<int>(it - input_names.begin());
}

int StateSpace::output_index(const std::string& name) const {
  const auto it = std::find(output_names.begin(), output_names.end(), name);
  if (it == output_names.end()) throw DimensionError("state space: no output named '" + name + "'");
  return static_cast<int>(it - output_names.begin());
}

std::complex<double> StateSpace::evaluate(std::complex<double> s, int output, int input) const {
  const int n = states();
  std::complex<double> direct = d(output, input);
  if (n == 0) return direct;
  const Eigen::MatrixXcd m = s * Eigen::MatrixXcd::Identity(n, n) - a.cast<std::complex<double>>();
  const Eigen::VectorXcd rhs = b.col(input).cast<std::complex<double>>();
  const Eigen::MatrixXcd x = solve(m, rhs);
  return (c.row(output).cast<std::complex<double>>() * x)(0, 0) + direct;
}

Eigen::MatrixXd StateSpace::dc_gain() const {
  if (states() == 0) return d;
  return d - c * solve(a, b);
}

TransferFunction::TransferFunction(Polynomial<double> num, Polynomial<double> den) {
  if (den.is_zero()) throw ParameterError("transfer function denominator is zero");
  const double lead = den.leading();
  num_ = (1.0 / lead) * num;
  den_ = den.monic();
}

std::complex<double> TransferFunction::operator()(std::complex<double> s) const {
  const std::complex<double> d = den_(s);
  if (d == 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
  return num_(s) / d;
}

StateSpace to_state_space(const TransferFunction& tf) {
  if (!tf.is_proper()) throw ParameterError("cannot realize an improper transfer function");
  const int n = tf.den().degree();
  const double feedthrough = tf.num().coeff(n);
  const Polynomial<double> rest = tf.num() - feedthrough * tf.den();

  StateSpace ss;
  ss.a = n > 0 ? companion(tf.den()) : Eigen::MatrixXd(0, 0);
  ss.b = Eigen::MatrixXd::Zero(n, 1);
  if (n > 0) ss.b(n - 1, 0) = 1.0;
  ss.c = Eigen::MatrixXd::Zero(1, n);
  for (int j = 0; j < n; ++j) ss.c(0, j) = rest.coeff(j);
  ss.d = Eigen::MatrixXd::Constant(1, 1, feedthrough);
  ss.input_names = {"u"};
  ss.output_names = {"y"};
  return ss;
}

TransferFunction to_transfer_function(const StateSpace& ss, int output, int input) {
  if (output < 0 || output >= ss.outputs() || input < 0 || input >= ss.inputs())
    throw DimensionError("to_transfer_function: channel out of range");
  const int n = ss.states();
  const double direct = ss.d(output, input);
  if (n == 0) return TransferFunction(Polynomial<double>{direct}, Polynomial<double>{1.0});

  const auto lev = faddeev_leverrier(ss.a);
  const auto& den = lev.charpoly.coeffs();
  std::vector<double> num(static_cast<std::size_t>(n) + 1);
  num[0] = direct;
  for (int k = 1; k <= n; ++k)
    num[static_cast<std::size_t>(k)] = ss.c.row(output).dot(lev.adjugate[static_cast<std::size_t>(k - 1)] * ss.b.col(input)) +
                                       direct * den[static_cast<std::size_t>(k)];
  return TransferFunction(Polynomial<double>(std::move(num)), lev.charpoly);
}

TransferFunction minreal(const TransferFunction& tf, double tol) {
  if (tf.num().is_zero()) return TransferFunction(Polynomial<double>{0.0}, Polynomial<double>{1.0});
  ComplexList zeros = tf.zeros();
  ComplexList poles = tf.poles();
  std::vector<bool> pole_used(poles.size(), false);
  ComplexList kept_zeros;
  for (const auto& z : zeros) {
    std::size_t best = poles.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (pole_used[i]) continue;
      const double dist = std::abs(z - poles[i]);
      if (dist <= tol * std::max(1.0, std::abs(poles[i])) && dist < best_dist) {
        best = i;
        best_dist = dist;
      }
    }
    if (best < poles.size())
      pole_used[best] = true;
    else
      kept_zeros.push_back(z);
  }
  ComplexList kept_poles;
  for (std::size_t i = 0; i < poles.size(); ++i)
    if (!pole_used[i]) kept_poles.push_back(poles[i]);
  if (kept_poles.size() == poles.size()) return tf;
  const double gain = tf.num().leading();
  return TransferFunction(gain * Polynomial<double>::from_roots(kept_zeros), Polynomial<double>::from_roots(kept_poles));
}

StateSpace series(const StateSpace& first, const StateSpace& second) {
  first.validate();
  second.validate();
  if (first.outputs() != 1 || second.inputs() != 1 || first.inputs() != 1 || second.outputs() != 1)
    throw DimensionError("series: both systems must be SISO");
  const int n1 = first.states();
  const int n2 = second.states();
  StateSpace s;
  s.a = Eigen::MatrixXd::Zero(n1 + n2, n1 + n2);
  s.a.topLeftCorner(n1, n1) = first.a;
  s.a.bottomLeftCorner(n2, n1) = second.b * first.c;
  s.a.bottomRightCorner(n2, n2) = second.a;
  s.b = Eigen::MatrixXd(n1 + n2, 1);
  s.b << first.b, second.b * first.d;
  s.c = Eigen::MatrixXd(1, n1 + n2);
  s.c << second.d * first.c, second.c;
  s.d = second.d * first.d;
  s.input_names = first.input_names;
  s.output_names = second.output_names;
  return s;
}

bool is_stable(const StateSpace& ss) {
  for (const auto& p : ss.poles())
    if (!(p.real() < 0.0)) return false;
  return true;
}

}  // namespace halfgain
