#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "ddpol/potential.hpp"
#include "ddpol/roots.hpp"
#include "ddpol/units.hpp"

namespace ddpol {

enum class Parity { even, odd, none };

/// A bound state of a delta-well potential, stored as a superposition of
/// single-well orbitals: psi(x) = sum_j c_j exp(-kappa |x - x_j|).
struct BoundState {
  Parity parity = Parity::none;
  double kappa = 0.0;   ///< bohr^-1
  double energy = 0.0;  ///< -kappa^2 / 2
  /// N(k0 a) of the symmetric double-well ground state; empty otherwise.
  std::optional<double> norm;
  Eigen::VectorXd centers;
  Eigen::VectorXd coefficients;

  double operator()(double x) const;
  /// One-sided derivative; side < 0 takes the left limit, side > 0 the right.
  double derivative(double x, int side) const;
  /// <x> of the state.
  double mean_position() const;
  /// <psi|psi> from the closed-form overlap of the orbitals.
  double norm_squared() const;
};

/// Root u of u (1 + tanh u) = p on [p/2, p].
template <class Real>
Real even_root(const Real& p) {
  using std::tanh;
  const Real eps = std::numeric_limits<Real>::epsilon();
  auto f = [&](const Real& u) { return u * (1 + tanh(u)) - p; };
  return bracketed_root<Real>(f, p / 2, p, 4 * eps * p, 2000);
}

/// Root v of v (1 + coth v) = p, which exists only for p > 1; it lies on
/// [(p-1)/2, p-1] because 1 + v < v coth v + v <= 1 + 2v.
template <class Real>
std::optional<Real> odd_root(const Real& p) {
  using std::tanh;
  if (!(p > 1)) return std::nullopt;
  const Real eps = std::numeric_limits<Real>::epsilon();
  auto f = [&](const Real& v) { return v + v / tanh(v) - p; };
  const Real hi = p - 1;
  return bracketed_root<Real>(f, hi / 2, hi, 4 * eps * hi, 2000);
}

/// k0 of the even state of the symmetric double well, from k0 (1 + tanh k0 a) = 2 g'.
double solve_even_kappa(double p, double a);
/// k1 of the odd state; present only for p > 1.
std::optional<double> solve_odd_kappa(double p, double a);

/// N(k0 a) = sqrt(2 k0 / (exp(2 k0 a) + 2 k0 a + 1)).
double ground_norm(double k0, double a);
/// Piecewise ground state: N cosh(k0 x) inside, N cosh(k0 a) exp(-k0 (|x|-a)) outside.
double ground_wavefunction(double x, double k0, double a);

BoundState ground_state(double p, double a);
BoundState ground_state(const ScaledParams& scaled);
std::optional<BoundState> odd_state(double p, double a);

struct Spectrum {
  std::vector<BoundState> states;  ///< ground state first
  bool near_degenerate = false;    ///< two kappas within 1e-3 relative
};

/// All bound states of an arbitrary attractive delta potential: the roots of
/// det(1 - K(kappa)) with K_lj = (g_j / kappa) exp(-kappa |x_l - x_j|).
Spectrum multi_delta_spectrum(const DeltaPotential& potential);

}  // namespace ddpol
