#pragma once

#include <stdexcept>
#include <string>

namespace detmodes {

/// Spectral input does not describe a real field (coeff(-k) != conj(coeff(k))).
class SymmetryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A field that must be mean-free carries a nonzero k = 0 coefficient.
class MeanError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Two operands live on different grids, viscosities or times.
class MismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time step rejected by the CFL check; carries a step size that would pass.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double suggested_dt)
      : std::runtime_error(what), suggested_dt_(suggested_dt) {}
  double suggested_dt() const noexcept { return suggested_dt_; }

 private:
  double suggested_dt_;
};

/// A diagnostic was asked for over a window that holds no usable data.
class InsufficientDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Run configuration violates a documented constraint.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Stored data failed its integrity check.
class ChecksumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detmodes
