#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netinf {

/// Raised when an argument or configuration violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a text input does not conform to its file format. The message
/// is prefixed with `line <n>: ` so callers can report the offending location.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace netinf
