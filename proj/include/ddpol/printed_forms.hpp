#pragma once

#include <complex>

#include "ddpol/units.hpp"

namespace ddpol {

/// Above-threshold appendix expressions evaluated literally (q = 1), kept for
/// comparison only: alpha_p1 from the E-series, alpha_p2 from the F-series.
struct PrintedAboveTerms {
  double p1_I = 0.0, p1_II = 0.0, p1_III = 0.0, p1_IV = 0.0;
  std::complex<double> alpha_p1;
  double A = 0.0, B = 0.0;
  double p2_I = 0.0, p2_II = 0.0;
  std::complex<double> alpha_p2;
};

PrintedAboveTerms printed_above_terms(double omega, double k0, double a, double g);

/// Literal appendix value against the implemented closed form, both in
/// atomic units. Below threshold the two coincide by construction.
struct PrintedDeviation {
  double omega_over_omegaB = 0.0;
  std::complex<double> printed;
  std::complex<double> implemented;
  double relative = 0.0;
};

PrintedDeviation printed_deviation(double omega_over_omegaB, const ScaledParams& scaled);

}  // namespace ddpol
