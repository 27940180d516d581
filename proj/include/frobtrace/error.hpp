#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frobtrace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands from different contexts (field, variable count), bad arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Input text failed to parse. `position()` is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A divisor cannot be modelled on the requested affine chart.
class ChartError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed; this always indicates a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace frobtrace
