#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "ddpol/potential.hpp"
#include "ddpol/quadrature.hpp"

namespace ddpol {

enum class Branch { below_threshold, above_threshold };

/// Intermediate-state energy E = E0 +- hbar omega, classified by sign.
/// Below threshold the free resolvent decays with gamma = sqrt(-2E); above it
/// propagates with Omega = sqrt(2E) and the outgoing prescription maps
/// gamma -> -i Omega.
struct Regime {
  Branch tag = Branch::below_threshold;
  double gamma_or_omega = 0.0;

  static Regime from_energy(double energy);

  /// gamma (below) or -i Omega (above).
  std::complex<double> gamma() const;
  double energy() const;
  bool above() const { return tag == Branch::above_threshold; }
};

/// <k|G0(E)|k> = 1 / (E - k^2/2). Throws OnPoleError on the pole.
std::complex<double> free_resolvent_diag(double energy, double k);

/// Position-space free resolvent (1/2pi) int G0(k) exp(ikd) dk = -exp(-gamma|d|)/gamma.
template <class Scalar, class Real>
Scalar free_propagator(const Scalar& gamma, const Real& d) {
  using std::abs;
  using std::exp;
  return -exp(-gamma * abs(d)) / gamma;
}

template <class Scalar>
struct KernelIntegrals {
  Scalar I, I1, I2, I3;
};

/// Closed-form residue values of the kernel integrals for decay constant
/// gamma (real below threshold, -i Omega above):
///   I  = 1 - g/gamma
///   I1 = 1 - (g/gamma)(1 + e),  I2 = 1 - (g/gamma)(1 - e),  I3 = -(g/gamma) e
/// with e = exp(-2 gamma a).
template <class Scalar, class Real>
KernelIntegrals<Scalar> kernel_integrals(const Scalar& gamma, const Real& g, const Real& a) {
  using std::exp;
  const Scalar one(1);
  const Scalar r = Scalar(g) / gamma;
  const Scalar e = exp(Scalar(-2 * a) * gamma);
  return {one - r, one - r * (one + e), one - r * (one - e), -r * e};
}

KernelIntegrals<std::complex<double>> kernel_integrals(const Regime& regime, double g, double a);

/// Same integrals evaluated by adaptive quadrature of their k-space
/// definitions (principal value plus half residue above threshold).
KernelIntegrals<std::complex<double>> kernel_integrals_quadrature(const Regime& regime, double g, double a,
                                                                  const QuadratureSpec& spec = {});

/// int_{-inf}^{inf} R(k) exp(ikd) G0(k) dk by quadrature, with the +i0
/// prescription applied analytically above threshold. R must decay at least
/// like 1/k^2 when d = 0 and be bounded otherwise.
std::complex<double> resolvent_fourier_integral(const std::function<std::complex<double>(double)>& r, double d,
                                                const Regime& regime, const QuadratureSpec& spec = {});

/// Dyson coefficients A_j(k) = int exp(i k2 x_j) <k2|G|k> dk2, one per well.
struct DysonCoefficients {
  Eigen::VectorXcd values;
  int sign = +1;  ///< G(+omega) or G(-omega)
  double k = 0.0;
  bool pole = false;         ///< evaluation sits on a zero of I, I1, I2 or det D
  double rcond = 1.0;        ///< reciprocal condition estimate of the Dyson system
};

/// Matrix D_lj = delta_lj + g_j c(x_l - x_j) with c the free propagator.
Eigen::MatrixXcd dyson_matrix(const DeltaPotential& potential, const Regime& regime);

/// Single well of strength g at the origin; E0 = -g^2/2.
DysonCoefficients coeff_single(double g, int sign, double omega, double k);
/// Symmetric double well at +-a; E0 from the even bound state. values = (A1, A2).
DysonCoefficients coeff_double(double g, double a, int sign, double omega, double k);
/// General N-well system with ground-state energy e0.
DysonCoefficients coeff_multi(const DeltaPotential& potential, double e0, int sign, double omega, double k);

}  // namespace ddpol
