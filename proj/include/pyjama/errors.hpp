#pragma once

#include <stdexcept>
#include <string>

namespace pyjama {

// Base of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A p-adic quantity is not known to enough digits for the requested result.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Input outside an operation's mathematical domain (zero valuation, 1/theta action, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Exact-only operation handed floating data, or vice versa.
class ModeError : public Error {
 public:
  using Error::Error;
};

// Covering configuration violates its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input. `line` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, std::string field = {})
      : Error((line > 0 ? "line " + std::to_string(line) + (field.empty() ? "" : " ") : std::string()) +
              (field.empty() ? "" : "[" + field + "]") + (line > 0 || !field.empty() ? ": " : "") + what),
        line_(line),
        field_(std::move(field)) {}

  int line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace pyjama
