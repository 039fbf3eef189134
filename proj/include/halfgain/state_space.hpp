#pragma once

#include <complex>
#include <string>
#include <vector>

#include "halfgain/linalg.hpp"

namespace halfgain {

/// Dense continuous-time LTI system x' = A x + B u, y = C x + D u.
struct StateSpace {
  Eigen::MatrixXd a;
  Eigen::MatrixXd b;
  Eigen::MatrixXd c;
  Eigen::MatrixXd d;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;

  int states() const { return static_cast<int>(a.rows()); }
  int inputs() const { return static_cast<int>(b.cols()); }
  int outputs() const { return static_cast<int>(c.rows()); }

  /// Throws DimensionError on inconsistent shapes, ParameterError on non-finite entries.
  void validate() const;

  int input_index(const std::string& name) const;
  int output_index(const std::string& name) const;

  /// C (sI − A)⁻¹ B + D for one channel, evaluated with a complex LU solve.
  std::complex<double> evaluate(std::complex<double> s, int output, int input) const;

  /// Steady-state gain D − C A⁻¹ B. Throws SingularMatrixError for a pole at 0.
  Eigen::MatrixXd dc_gain() const;

  ComplexList poles() const { return eigenvalues(a); }
};

/// Rational function num(s)/den(s) with a monic denominator.
class TransferFunction {
 public:
  TransferFunction() : num_{0.0}, den_{1.0} {}
  TransferFunction(Polynomial<double> num, Polynomial<double> den);
  /// Coefficient lists in descending powers.
  TransferFunction(std::vector<double> num, std::vector<double> den)
      : TransferFunction(Polynomial<double>(std::move(num)), Polynomial<double>(std::move(den))) {}

  const Polynomial<double>& num() const { return num_; }
  const Polynomial<double>& den() const { return den_; }

  bool is_proper() const { return num_.degree() <= den_.degree(); }
  bool is_strictly_proper() const { return num_.is_zero() || num_.degree() < den_.degree(); }

  /// num(s)/den(s); a root of den yields (+inf, 0).
  std::complex<double> operator()(std::complex<double> s) const;

  ComplexList poles() const { return poly_roots(den_); }
  ComplexList zeros() const { return num_.is_zero() ? ComplexList{} : poly_roots(num_); }

  friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return TransferFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend TransferFunction operator-(const TransferFunction& g) { return TransferFunction(-1.0 * g.num_, g.den_); }

 private:
  Polynomial<double> num_;
  Polynomial<double> den_;
};

/// Controllable canonical realization (single input "u", single output "y").
StateSpace to_state_space(const TransferFunction& tf);

/// Exact polynomial form of one channel via the Faddeev–LeVerrier adjugate.
TransferFunction to_transfer_function(const StateSpace& ss, int output = 0, int input = 0);

/// Cancels pole/zero pairs closer than tol·max(1, |p|).
TransferFunction minreal(const TransferFunction& tf, double tol = 1e-7);

/// SISO series connection: u → first → second → y.
StateSpace series(const StateSpace& first, const StateSpace& second);

bool is_stable(const StateSpace& ss);

}  // namespace halfgain
