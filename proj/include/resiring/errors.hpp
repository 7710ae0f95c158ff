#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resiring {

/// Malformed polynomial or modulus text. `position()` is a 0-based byte offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An exhaustive computation would exceed its configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's documented precondition does not hold for the inputs.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lifting statement does not apply, e.g. f'(a) = 0 as an integer.
class InapplicableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace resiring
