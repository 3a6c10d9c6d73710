#pragma once

#include <stdexcept>
#include <string>

namespace koenigs {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter combination that the operation does not support (e.g. alpha <= -1).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Point on (or numerically at) a singular set of the metric.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Metric factor f <= 0 at the requested point.
class NonPositiveMetricError : public DomainError {
 public:
  NonPositiveMetricError(const std::string& what, double value)
      : DomainError(what), value_(value) {}
  double value() const { return value_; }

 private:
  double value_;
};

// Operation not defined for the requested space kind or chart.
class KindError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Energy outside every validity window (some effective index is imaginary).
class OutOfWindowError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Space constants do not match the zero pattern of a closed-form case.
class PatternMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Closed-form value is a squaring artifact: it does not solve the unsquared condition.
class BranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature or discretisation failed to reach the requested accuracy.
class AccuracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace koenigs
