#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace padic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: zero denominators, non-prime moduli, mismatched primes,
/// unparseable specifications.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A point lies outside the region where an operation is defined, e.g. the
/// convergence disk of the exponential.  `step` identifies the integration
/// step of a propagator computation when one applies.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& what, std::optional<std::int64_t> step = std::nullopt)
      : Error(what), step_(step) {}

  std::optional<std::int64_t> step() const noexcept { return step_; }

private:
  std::optional<std::int64_t> step_;
};

/// Riemann sums requested against an unbounded distribution.
class UnboundedMeasureError : public DomainError {
public:
  using DomainError::DomainError;
};

/// Not enough digits are known to answer the question asked.
class PrecisionError : public Error {
public:
  using Error::Error;
};

/// Division by a value that is zero at its known precision.
class DivisionByZero : public Error {
public:
  using Error::Error;
};

/// An iterated Riemann sum did not stabilize.
class ConvergenceError : public Error {
public:
  using Error::Error;
};

} // namespace padic
