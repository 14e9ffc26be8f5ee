#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bgm {

/// Bad argument supplied by the caller (unknown vertex, non-edge, size mismatch).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but outside what the implementation handles (oversize graph,
/// non-forest where a forest is required).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A work budget ran out. `progress` is whatever count had been produced so far.
class BudgetExceeded : public CapabilityError {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t progress)
      : CapabilityError(what), progress_(progress) {}
  std::uint64_t progress() const noexcept { return progress_; }

 private:
  std::uint64_t progress_;
};

/// An operation's documented precondition does not hold.
class PreconditionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed input text. Line numbers are 1-based; 0 means "not line oriented".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace bgm
