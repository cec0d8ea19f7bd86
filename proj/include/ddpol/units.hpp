#pragma once

#include <complex>

namespace ddpol {

namespace constants {
/// CODATA Bohr radius, pinned to 8 significant figures.
inline constexpr double bohr_radius_m = 0.52917721e-10;
inline constexpr double angstrom_m = 1.0e-10;
inline constexpr double bohr_per_angstrom = angstrom_m / bohr_radius_m;
/// alpha/(4 pi eps0) of one atomic unit of polarizability, in m^3.
inline constexpr double au_polarizability_m3 = bohr_radius_m * bohr_radius_m * bohr_radius_m;
/// The even ground state stops being well separated from the odd state here.
inline constexpr double degenerate_p = 5.0;
}  // namespace constants

/// User-facing physical description of the symmetric double well.
/// The well strength itself is supplied as p = 2 m g a / hbar^2.
struct PhysicalParams {
  double mass = 1.0;    ///< in electron masses
  double charge = 1.0;  ///< in elementary charges
  double half_separation_a = 0.5;  ///< in angstrom (figures quote 2a)
};

/// Scaled quantities used internally: hbar = m = 1, lengths in Bohr radii.
/// Polarizabilities computed in these units are multiplied by
/// `atomic_units_factor()` to obtain atomic units (bohr^3).
struct ScaledParams {
  double p = 0.0;
  double a = 0.0;        ///< half separation, bohr
  double g_prime = 0.0;  ///< m g / hbar^2, bohr^-1
  double mass = 1.0;
  double charge = 1.0;
  bool allow_degenerate = false;

  /// q^2 m / hbar^2 in atomic units.
  double atomic_units_factor() const { return charge * charge * mass; }
};

ScaledParams build_scaled(const PhysicalParams& params, double p, bool allow_degenerate = false);

/// Scaled parameters for an explicit well list (N-delta path): only the unit
/// factors are meaningful, p and a are left at zero.
ScaledParams particle_only(double mass, double charge);

/// alpha / (4 pi eps0) in cubic metres.
struct SiPolarizability {
  std::complex<double> value_m3;
  bool finite = true;
};

SiPolarizability to_si_volume(std::complex<double> alpha_atomic);

}  // namespace ddpol
