#pragma once

#include <stdexcept>
#include <string>

namespace famw {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line/column when known (0 otherwise).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ")"
                   : what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class MissingSlot : public Error {
 public:
  explicit MissingSlot(const std::string& slot) : Error("missing product slot '" + slot + "'") {}
};

class UnknownName : public Error {
 public:
  using Error::Error;
};

/// Invalid combination of options or arguments.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured size or degree cap was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace famw
