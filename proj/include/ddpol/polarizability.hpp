#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ddpol/units.hpp"

namespace ddpol {

enum class FrequencyRegime { below, above };
enum class Method { closed_form, quadrature, grid };

std::string_view to_string(FrequencyRegime r);
std::string_view to_string(Method m);

/// Complex polarizability at one frequency. `value` is alpha / (4 pi eps0) in
/// atomic units (bohr^3); `si()` converts at the output boundary.
struct PolarizabilityPoint {
  double omega_over_omegaB = 0.0;
  std::complex<double> value;
  FrequencyRegime regime = FrequencyRegime::below;
  Method method = Method::closed_form;
  /// |omega - omega_res| / omega_B when the system has a below-threshold pole.
  std::optional<double> pole_proximity;
  /// Inside the pole exclusion zone; `value` is NaN.
  bool at_pole = false;
  /// Method-specific error estimate (Richardson difference for the grid).
  double error_estimate = 0.0;
  std::vector<std::string> warnings;

  SiPolarizability si() const { return to_si_volume(value); }
};

}  // namespace ddpol
