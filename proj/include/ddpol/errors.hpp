#pragma once

#include <stdexcept>
#include <string>

namespace ddpol {

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid user input (bad parameters, malformed config).
struct ConfigError : Error {
  using Error::Error;
};

/// p >= 5 without the explicit override: the even ground state is no longer
/// well separated from the odd state.
struct DegenerateRegionError : Error {
  using Error::Error;
};

/// Frequency inside the excluded neighbourhood of the photoionization threshold.
struct ThresholdError : Error {
  using Error::Error;
};

/// A finite value was requested exactly on the free-resolvent pole.
struct OnPoleError : Error {
  using Error::Error;
};

/// Quadrature, root finding or a linear solve failed to reach tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

}  // namespace ddpol
