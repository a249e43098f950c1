#pragma once

#include <stdexcept>
#include <string>

namespace sacs {

/// Malformed or out-of-range input from a scenario or data file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that is well-formed but physically invalid (resonant denominators,
/// integrator step too large for the Hamiltonian, ...).
class PhysicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StepSizeError : public PhysicsError {
 public:
  using PhysicsError::PhysicsError;
};

}  // namespace sacs
