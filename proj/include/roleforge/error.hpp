#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roleforge {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed frame, formula, sequent or label text. Line and column are 1-based;
// a zero line means the input was a single line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return "column " + std::to_string(column) + ": " + what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// A well-formed request the engine refuses: wrong mode, out-of-range position,
// resource bound exceeded, non-idempotent argument and so on.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace roleforge
