#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pseudolinear {

/// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an exhaustive computation would exceed its enumeration guard.
/// Carries the size that would have been required so callers can report it.
class GuardExceeded : public std::runtime_error {
 public:
  GuardExceeded(const std::string& what, double required, double guard)
      : std::runtime_error(what + " (required " + format(required) + ", guard " + format(guard) + ")"),
        required_(required),
        guard_(guard) {}

  double required() const noexcept { return required_; }
  double guard() const noexcept { return guard_; }

 private:
  static std::string format(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }

  double required_;
  double guard_;
};

/// Raised when a serialized artifact cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pseudolinear
