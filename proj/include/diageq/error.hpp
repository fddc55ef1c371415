#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace diageq {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition on caller-supplied data.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Division by zero, field mismatch, negative power of zero.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// The instance has fewer variables than the selected procedure consumes.
class InsufficientVariables : public Error {
 public:
  InsufficientVariables(const std::string& what, std::string required)
      : Error(what), required_(std::move(required)) {}

  /// Decimal string; the count can exceed any machine integer.
  const std::string& required() const noexcept { return required_; }

 private:
  std::string required_;
};

/// A forced strategy does not apply to the instance (e.g. cubic with gcd(d, q-1) = 2).
class StrategyUnavailable : public Error {
 public:
  using Error::Error;
};

/// A Las-Vegas retry budget ran out.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// An internal postcondition failed. Always a bug.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace diageq
