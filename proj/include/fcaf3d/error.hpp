#pragma once

#include <stdexcept>
#include <string>

namespace fcaf3d {

/// Raised for invalid inputs (bad boxes, locations outside boxes, malformed files).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : InvalidArgument(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A file could not be opened or read.
class IoError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A library invariant did not hold. Indicates a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fcaf3d
