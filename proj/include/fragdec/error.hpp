#pragma once

#include <stdexcept>
#include <string>

namespace fragdec {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A configurable resource guard (element cap, assignment cap, ...) was hit.
/// The message names the guard and the size that tripped it.
class GuardError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (regex, DFA file, formula, equation file).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_ = 0;
};

}  // namespace fragdec
