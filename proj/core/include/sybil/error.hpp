#pragma once

#include <stdexcept>
#include <string>

namespace sybil {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (negative balance,
/// z < -1/e for Lambert W, a closed form requested in the binding regime).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The attacker cannot execute the requested split under the cost scheme.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// A lower bound would be vacuous because the chunk value f(m) is zero.
class TrivialityError : public Error {
 public:
  using Error::Error;
};

/// Instance too large for an exhaustive routine.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: rule strings, decimal strings, CLI/config values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A snapshot file failed to parse or validate. `field()` holds the JSON
/// path of the offending value, e.g. `proposals[0].votes[2].weight`.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, std::string message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)),
        message_(std::move(message)) {}

  const std::string& field() const noexcept { return field_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_;
  std::string message_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sybil
