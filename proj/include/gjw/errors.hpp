#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gjw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A constructor or operation parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (pair expressions, graph expressions, edge lists).
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// An identifier in an expression is neither `x`, a known function, nor a bound parameter.
class UnknownIdentifierError : public ParseError {
 public:
  UnknownIdentifierError(std::size_t offset, const std::string& name);
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Evaluation inside the guard band of a kinked or singular pair function.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference step too large for the separation margin of a configuration.
class StepTooLargeError : public Error {
 public:
  using Error::Error;
};

/// Grid or dimension exceeds the configured memory budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Model cannot be discretized (non-normalizable or contact pair).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver failed to reach the requested residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(std::size_t iterations, double residual);
  std::size_t iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  std::size_t iterations_;
  double residual_;
};

}  // namespace gjw
