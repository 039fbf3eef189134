#pragma once

#include <stdexcept>
#include <string>

namespace halfgain {

// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(const std::string& what, double pivot)
      : Error(what + " (pivot magnitude " + std::to_string(pivot) + ")"), pivot_(pivot) {}
  double pivot() const { return pivot_; }

 private:
  double pivot_;
};

class UndefinedRootsError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class OrderError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ModeError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (final residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class DefinitenessError : public Error {
 public:
  using Error::Error;
};

class InterconnectionError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, double time)
      : Error(what + " at t = " + std::to_string(time) + " s"), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfgain
