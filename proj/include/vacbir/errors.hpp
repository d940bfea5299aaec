#pragma once

#include <stdexcept>
#include <string>

namespace vacbir {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic or conversion between incompatible physical dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented invariant. `field()` names the offending
/// input using the dotted config path (e.g. `background.b`).
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The requested quantity does not exist for the given physical parameters
/// (e.g. the signal never rises above the polarimeter purity floor).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A closed form was called outside its precondition (e.g. circular-probe
/// formula with w1 != w2).
class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical procedure failed to reach the requested accuracy within budget.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate, double achieved_error)
      : Error(what), estimate_(estimate), achieved_error_(achieved_error) {}

  double estimate() const noexcept { return estimate_; }
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double estimate_;
  double achieved_error_;
};

/// Mathematical result is not representable as a finite double.
/// `exponent()` is the natural logarithm of the result's magnitude.
class OverflowError : public Error {
 public:
  OverflowError(const std::string& what, double exponent)
      : Error(what), exponent_(exponent) {}

  double exponent() const noexcept { return exponent_; }

 private:
  double exponent_;
};

}  // namespace vacbir
