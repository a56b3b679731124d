#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lvs {

// Base for every error raised by the library. The C API maps the
// subclasses onto status codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: a parameter outside its admissible range.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A formula or operation evaluated outside its mathematical domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Inconsistent grid / scenario / config combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed; carries the residual history.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<double>& residual_history() const noexcept { return history_; }
  double last_residual() const noexcept { return history_.empty() ? -1.0 : history_.back(); }

 private:
  std::vector<double> history_;
};

// Numerical result that violates a structural property (monotonicity,
// box invariant, boundary contamination, ...).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace lvs
