#pragma once

#include <stdexcept>
#include <string>

namespace summ {

// Base class for all library errors. `kind()` is a stable machine-readable
// tag used by the CLI when emitting error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Invalid argument supplied by a caller (bad position, unknown label, ...).
class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("input", message) {}
};

// A summary domain or candidate pool is too large to handle.
class SizingError : public Error {
 public:
  explicit SizingError(const std::string& message) : Error("sizing", message) {}
};

// Invalid run configuration (split fractions, empty splits, bad grids).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

// Problem with dataset content (empty file, labels outside the alphabet).
class DataError : public Error {
 public:
  explicit DataError(const std::string& message) : Error("data", message) {}
};

// Malformed input file; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, long line = 0)
      : Error("parse", line > 0 ? message + " (line " + std::to_string(line) + ")" : message),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Violated internal invariant; indicates a bug or mismatched inputs.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& message) : Error("internal", message) {}
};

}  // namespace summ
