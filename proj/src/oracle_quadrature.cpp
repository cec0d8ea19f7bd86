#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "ddpol/bound_states.hpp"
#include "ddpol/closed_form.hpp"
#include "ddpol/errors.hpp"
#include "ddpol/greens_kernel.hpp"
#include "ddpol/oracle.hpp"

namespace ddpol {

namespace {

using cd = std::complex<double>;

// <x Psi0|G(E)|x Psi0> with G = G0 + G0 V G resolved through the Dyson system
// over the well sites. Every k-integral goes through resolvent_fourier_integral.
cd resolvent_expectation(double energy, const BoundState& ground, double xbar, const DeltaPotential& v,
                         const QuadratureSpec& spec) {
  const Regime regime = Regime::from_energy(energy);
  const auto n = static_cast<Eigen::Index>(v.size());
  const double inv_sqrt2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const double inv_2pi = 0.5 / std::numbers::pi;

  auto m = [&](Eigen::Index j) { return [&, j](double k) { return dipole_orbital_term(k, ground, j, xbar); }; };
  auto mbar = [&](Eigen::Index j) {
    return [&, j](double k) { return std::conj(dipole_orbital_term(k, ground, j, xbar)); };
  };
  auto x = [&](Eigen::Index j) { return v[static_cast<std::size_t>(j)].position; };

  // free propagator between sites, one integral per distinct separation
  std::map<long long, cd> cache;
  auto propagator = [&](double d) {
    const long long key = std::llround(std::abs(d) * 1e9);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const cd c = inv_2pi * resolvent_fourier_integral([](double) { return cd(1.0, 0.0); }, d, regime, spec);
    cache.emplace(key, c);
    return c;
  };

  Eigen::MatrixXcd dyson(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < n; ++j)
      dyson(l, j) = (l == j ? 1.0 : 0.0) + v[static_cast<std::size_t>(j)].strength * propagator(x(l) - x(j));

  cd free_part = 0.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index jp = 0; jp < n; ++jp) {
      auto r = [&, j, jp](double k) { return mbar(j)(k) * m(jp)(k); };
      free_part += resolvent_fourier_integral(r, x(j) - x(jp), regime, spec);
    }

  Eigen::VectorXcd right = Eigen::VectorXcd::Zero(n);  // <x_l|G0|x Psi0>
  Eigen::VectorXcd left = Eigen::VectorXcd::Zero(n);   // <x Psi0|G0|x_l>
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < n; ++j) {
      right[l] += inv_sqrt2pi * resolvent_fourier_integral(m(j), x(l) - x(j), regime, spec);
      left[l] += inv_sqrt2pi * resolvent_fourier_integral(mbar(j), x(j) - x(l), regime, spec);
    }

  const Eigen::VectorXcd y = dyson.partialPivLu().solve(right);
  cd correction = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) correction += v[static_cast<std::size_t>(j)].strength * left[j] * y[j];
  return free_part - correction;
}

}  // namespace

PolarizabilityPoint alpha_eq6_quadrature(double w, const ScaledParams& s, const DeltaPotential& v,
                                         const QuadratureSpec& spec) {
  if (!std::isfinite(w) || w < 0.0) throw ConfigError("omega/omega_B must be finite and non-negative");
  if (std::abs(w - 1.0) < threshold_exclusion) throw ThresholdError("omega inside the threshold exclusion zone");
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) throw ConfigError("quadrature tolerances must be positive");

  const auto spectrum = multi_delta_spectrum(v);
  const BoundState& ground = spectrum.states.front();
  const double omega = w * (-ground.energy);
  const double xbar = ground.mean_position();

  cd phi = 0.0;
  for (int sign : {+1, -1}) phi += resolvent_expectation(ground.energy + sign * omega, ground, xbar, v, spec);

  PolarizabilityPoint pt;
  pt.omega_over_omegaB = w;
  pt.regime = w < 1.0 ? FrequencyRegime::below : FrequencyRegime::above;
  pt.method = Method::quadrature;
  pt.value = -phi * s.atomic_units_factor();
  if (pt.regime == FrequencyRegime::below) {
    // every integrand is real here; what survives in Im is rounding residue
    pt.error_estimate = std::abs(pt.value.imag());
    pt.value.imag(0.0);
  }
  return pt;
}

}  // namespace ddpol
