#pragma once

#include <stdexcept>
#include <string>

namespace thermo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, bad moduli, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two fields or states that must share a grid do not.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// Temperature fell to or below the admissible floor.
class PositivityLoss : public Error {
 public:
  PositivityLoss(double t, double theta_min, const std::string& what)
      : Error(what), t_(t), theta_min_(theta_min) {}
  double time() const noexcept { return t_; }
  double theta_min() const noexcept { return theta_min_; }

 private:
  double t_;
  double theta_min_;
};

/// NaN or Inf detected in the state.
class NonFinite : public Error {
 public:
  NonFinite(double t, const std::string& what) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Adaptive integrator could not make progress.
class StepSizeUnderflow : public Error {
 public:
  StepSizeUnderflow(double t, const std::string& what) : Error(what), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

/// Configuration text could not be parsed or validated.
class ConfigError : public Error {
 public:
  ConfigError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Filesystem or stream failure.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized data (bad magic, truncated payload, bad header).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermo
