#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace derivchain {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text: a template, a TSV row, a JSON line.
/// `line()` is 1-based, or 0 when the text did not come from a file.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a structural invariant
/// (dangling reference, cycle, arity mismatch, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace derivchain
