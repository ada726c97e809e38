#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace adabench {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A distribution or kernel parameter lies outside its mathematical domain.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

/// Vector lengths or layer shapes do not line up.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A function or gradient evaluation produced a non-finite value.
class EvaluationError : public Error {
 public:
  explicit EvaluationError(const std::string& what,
                           std::optional<std::size_t> coordinate = std::nullopt)
      : Error(what), coordinate_(coordinate) {}

  /// Coordinate that triggered the failure, when one can be named.
  std::optional<std::size_t> coordinate() const noexcept { return coordinate_; }

 private:
  std::optional<std::size_t> coordinate_;
};

/// An operation was called on a state that cannot support it.
class StateError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment, schedule or problem configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace adabench
