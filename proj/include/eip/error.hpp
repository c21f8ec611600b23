#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eip {

/// Malformed input data (configuration files, cache files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A rearrangement lost (or gained) bonds, which certifies that its input
/// was not an edge-perimeter minimizer.
class NotMinimizerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant of a construction failed.
class PropertyViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace eip
