#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace spikectl {

/// Shapes of the operands do not fit the operation.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument is outside the mathematical domain of the operation
/// (non-Hurwitz matrix, non-positive gain, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Lyapunov system is singular: two eigenvalues sum to zero.
class MarginalSpectrumError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative kernel hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : std::runtime_error(what), last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

/// Scenario validation failure. `key` names the offending entry.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string key, const std::string& message)
      : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace spikectl
