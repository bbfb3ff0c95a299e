#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace torelli {

/// Malformed polynomial text. `position` is the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Input outside the range an operation is defined on (singular divisor,
/// unsupported characteristic, wrong number of variables, ...).
class UnsupportedInput : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class FieldMismatch : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public std::domain_error {
  using std::domain_error::domain_error;
};

class PreconditionViolation : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed to hold. Indicates a bug or a violated
/// upstream precondition, never an expected outcome.
class ConsistencyFailure : public std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace torelli
