#include "ddpol/units.hpp"

#include <cmath>
#include <string>

#include "ddpol/errors.hpp"

namespace ddpol {

ScaledParams build_scaled(const PhysicalParams& params, double p, bool allow_degenerate) {
  if (!(params.mass > 0.0) || !std::isfinite(params.mass))
    throw ConfigError("particle mass must be positive");
  if (params.charge == 0.0 || !std::isfinite(params.charge))
    throw ConfigError("particle charge must be non-zero");
  if (!(params.half_separation_a > 0.0) || !std::isfinite(params.half_separation_a))
    throw ConfigError("well separation must be positive");
  if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("p must be positive");
  if (p >= constants::degenerate_p && !allow_degenerate)
    throw DegenerateRegionError("p = " + std::to_string(p) +
                                " lies in the degenerate region (p >= 5); pass the override to proceed");

  ScaledParams s;
  s.p = p;
  s.a = params.half_separation_a * constants::bohr_per_angstrom;
  s.g_prime = p / (2.0 * s.a);
  s.mass = params.mass;
  s.charge = params.charge;
  s.allow_degenerate = allow_degenerate;
  return s;
}

ScaledParams particle_only(double mass, double charge) {
  if (!(mass > 0.0)) throw ConfigError("particle mass must be positive");
  if (charge == 0.0) throw ConfigError("particle charge must be non-zero");
  ScaledParams s;
  s.mass = mass;
  s.charge = charge;
  return s;
}

SiPolarizability to_si_volume(std::complex<double> alpha_atomic) {
  SiPolarizability out;
  out.value_m3 = {alpha_atomic.real() * constants::au_polarizability_m3,
                  alpha_atomic.imag() * constants::au_polarizability_m3};
  out.finite = std::isfinite(alpha_atomic.real()) && std::isfinite(alpha_atomic.imag());
  return out;
}

}  // namespace ddpol
