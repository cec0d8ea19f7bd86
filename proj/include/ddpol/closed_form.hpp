#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "ddpol/bound_states.hpp"
#include "ddpol/polarizability.hpp"
#include "ddpol/units.hpp"

namespace ddpol {

/// Frequencies with |omega/omega_B - 1| below this are not evaluated.
inline constexpr double threshold_exclusion = 1e-6;
/// |I2| below this marks the below-threshold resonance.
inline constexpr double pole_exclusion = 1e-6;

/// The two pieces of alpha_+(omega) for the symmetric double well, in scaled
/// units with q = 1. alpha_p1 replaces G by G0 (the free part), alpha_p2 by
/// G0 V G. `gamma` is sqrt(k0^2 - 2 omega) below threshold and -i Omega above
/// it, so the same expressions cover both regimes by analytic continuation.
template <class Scalar>
struct AppendixTerms {
  Scalar p1_I, p1_II, p1_III;  ///< bracketed sub-terms of alpha_p1
  Scalar alpha_p1;
  Scalar p2_I;  ///< squared bracket of alpha_p2
  Scalar alpha_p2;
  Scalar n_prime;  ///< N'(k0 a)
  Scalar n_gamma;  ///< N(gamma a) = 1 / I2(gamma)

  Scalar alpha_plus() const { return alpha_p1 + alpha_p2; }
};

template <class Scalar, class Real>
AppendixTerms<Scalar> appendix_terms(const Scalar& gamma, const Real& omega, const Real& k0, const Real& a,
                                     const Real& g) {
  using std::exp;
  using std::sqrt;
  const Scalar K(k0), A(a), W(omega), G(g), y(gamma);
  const Scalar K2 = K * K, y2 = y * y, A2 = A * A;
  const Scalar e2k = exp(-2.0 * A * K);  // exp(-2 k0 a)
  const Scalar e2y = exp(-2.0 * A * y);  // exp(-2 gamma a)

  AppendixTerms<Scalar> t;
  t.n_prime = sqrt(2.0 * K / (1.0 / e2k + 2.0 * K * A + 1.0));

  t.p1_I = -K / (16.0 * W) *
           (-4.0 * A2 * K / y + 6.0 * A2 - 2.0 * A2 * y2 / K2 +
            (-5.0 * K2 - 15.0 * y2 + 16.0 * y * K + 5.0 * y2 * y2 / K2 - y2 * y2 * y2 / (K2 * K2)) / (4.0 * W * W));
  t.p1_II = K * e2k / 24.0 *
            (-(4.0 * A2 * A * K2 * K + 16.0 * A2 * K2 + 3.0) / (K2 * K2) -
             (5.0 * A2 * y2 + A2 * K2 + 4.0 * A * K + 3.0) / (K2 * W) - A * (5.0 * K2 - 3.0 * y2) / (K2 * K * W) +
             3.0 * (K2 + y2) / (W * W * W));
  t.p1_III = K * e2y / (4.0 * W) * (-A2 * K / y + 2.0 * A * K / W - y * K / (W * W));
  t.alpha_p1 = 2.0 / (e2k * W) * t.n_prime * t.n_prime * (t.p1_I + t.p1_II + t.p1_III);

  t.n_gamma = 1.0 / (1.0 + G / y * (e2y - 1.0));
  const Scalar br = A * K / y - A - A * K * e2y / y - A * e2k + K * e2y / W - K * e2k / W;
  t.p2_I = br * br / (16.0 * W * W);
  t.alpha_p2 = 8.0 * G / e2k * t.n_prime * t.n_prime * t.n_gamma * t.p2_I;
  return t;
}

/// Static polarizability in scaled units (q = m = hbar = 1).
template <class Real>
Real static_polarizability_scaled(const Real& k0, const Real& a, const Real& g) {
  using std::exp;
  const Real n2 = 2 * k0 / (exp(2 * k0 * a) + 2 * k0 * a + 1);
  const Real e2 = exp(2 * k0 * a);
  const Real bracket = -(3 + 16 * a * k0) / 6 + g * e2 * e2 / (g + e2 * (k0 - g));
  return a * a * n2 / (k0 * k0 * k0) * bracket + (5 + 12 * a * a * k0 * k0) / (4 * k0 * k0 * k0 * k0);
}

/// <k|x - center|Psi> for a bound state written as a sum of orbitals; purely
/// imaginary and odd in k for the symmetric ground state with center 0.
std::complex<double> dipole_matrix_element(double k, const BoundState& state, double center = 0.0);
/// The j-th orbital's contribution without its phase factor exp(-i k x_j),
/// a rational function of k.
std::complex<double> dipole_orbital_term(double k, const BoundState& state, Eigen::Index j, double center = 0.0);

/// alpha(omega) for 0 < omega < omega_B, real. Uses 50-digit arithmetic for
/// omega < 0.2 omega_B where the 1/omega^3 terms cancel.
PolarizabilityPoint alpha_below(double omega_over_omegaB, const ScaledParams& scaled);
/// alpha(omega) for omega > omega_B; Im alpha from the outgoing-wave continuation.
PolarizabilityPoint alpha_above(double omega_over_omegaB, const ScaledParams& scaled);
/// Dispatches on the regime; omega = 0 returns the static value.
PolarizabilityPoint alpha_closed_form(double omega_over_omegaB, const ScaledParams& scaled);
PolarizabilityPoint alpha_static(const ScaledParams& scaled);

/// omega_res / omega_B: the zero of I2(gamma(omega)) on (0, omega_B). Present only for p > 1.
std::optional<double> resonance_locate(const ScaledParams& scaled);

/// Appendix terms at frequency +omega (sign = +1) or -omega (sign = -1), in double precision.
AppendixTerms<std::complex<double>> appendix_terms_at(double omega_over_omegaB, int sign, const ScaledParams& scaled);

}  // namespace ddpol
