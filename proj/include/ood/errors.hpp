#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ood {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Side-gear speeds do not satisfy the ring/side-gear averaging constraint.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// Output demand whose mean is not fixed by the input speed.
class UnreachableDemand : public Error {
 public:
  using Error::Error;
};

class NotABend : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// Invalid simulation geometry or parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configuration value violates a documented invariant.
class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Malformed configuration text; carries the 1-based line number.
class ParseError : public ConfigError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ood
