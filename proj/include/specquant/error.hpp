#pragma once

#include <stdexcept>
#include <string>

namespace specquant {

/// Argument lies outside the mathematical domain of an operation (e.g. a
/// frequency outside [-pi, pi]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Caller violated a precondition on a count, size or probability.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input carries no usable spectral mass (all-zero periodogram or estimate).
class DegenerateInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closed-form variance expression produced a non-positive value.
/// `bracket()` is the value of the bracketed integral sum, `value()` the full
/// expression after the f(lambda_p)^-2 factor.
class FormulaInconsistencyError : public std::runtime_error {
 public:
  FormulaInconsistencyError(const std::string& what, double bracket, double value)
      : std::runtime_error(what), bracket_(bracket), value_(value) {}

  double bracket() const noexcept { return bracket_; }
  double value() const noexcept { return value_; }

 private:
  double bracket_;
  double value_;
};

}  // namespace specquant
