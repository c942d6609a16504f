#pragma once

#include <stdexcept>
#include <string>

namespace coexfair {

/// Argument outside the model's domain (bad probability, bad count, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Defer period minus DIFS is not a whole number of backoff slots.
class NonIntegerRegion : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Defer period is shorter than DIFS.
class NegativeRegion : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Fixed-point iteration ran out of iterations before reaching tolerance.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(int iterations_, double residual_)
      : std::runtime_error("fixed-point solve did not converge after " +
                           std::to_string(iterations_) +
                           " iterations (residual " + std::to_string(residual_) + ")"),
        iterations(iterations_),
        residual(residual_) {}

  int iterations;
  double residual;
};

/// Optimization objective has no finite value anywhere on the search domain.
class ObjectiveUndefined : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Simulation horizon missing, doubly specified, or non-positive.
class InvalidHorizon : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Scenario config file problem; `key` names the offending entry when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::string key_ = "")
      : std::runtime_error(message), key(std::move(key_)) {}

  std::string key;
};

}  // namespace coexfair
