#pragma once

#include <stdexcept>
#include <string>

namespace nanopull {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: out-of-range parameters, malformed config files, unknown keys.
struct ConfigError : Error {
  using Error::Error;
};

// A requested evaluation is mathematically ill-defined for the given
// parameters (e.g. zero chemical potential at zero temperature, or an
// excitation frequency sitting exactly on a cavity resonance of the
// transmission-line response).
struct DomainError : Error {
  using Error::Error;
};

// File I/O failure; message carries the path involved.
struct IoError : Error {
  using Error::Error;
};

// Numerics failed to reach the requested quality: ill-conditioned linear
// system, quadrature that did not converge, residual above tolerance.
struct NumericsError : Error {
  using Error::Error;
};

}  // namespace nanopull
