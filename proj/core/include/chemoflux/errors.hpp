#pragma once

#include <stdexcept>
#include <string>

namespace chemoflux {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mesh construction rejected (too few cells, bad extent).
class InvalidMeshError : public Error {
 public:
  using Error::Error;
};

/// Two fields that must live on the same mesh do not.
class MeshMismatchError : public Error {
 public:
  using Error::Error;
};

/// Tridiagonal system failed the diagonal-dominance precondition or lost its pivot.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// A model function returned a non-finite value during validation sampling.
class NonFiniteSampleError : public Error {
 public:
  using Error::Error;
};

/// Time integration produced a non-finite value. Carries the field name and step.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& field, long step, double time)
      : Error("divergence: non-finite " + field + " at step " + std::to_string(step) +
              ", t=" + std::to_string(time)),
        field_(field),
        step_(step),
        time_(time) {}

  const std::string& field() const { return field_; }
  long step() const { return step_; }
  double time() const { return time_; }

 private:
  std::string field_;
  long step_;
  double time_;
};

/// Pseudo-time relaxation hit its step budget before reaching a steady state.
class NoSteadyStateError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected: parse failure, unknown key, or failed validation.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace chemoflux
