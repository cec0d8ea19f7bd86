#include "ddpol/greens_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ddpol/bound_states.hpp"
#include "ddpol/errors.hpp"

namespace ddpol {

using cd = std::complex<double>;

Regime Regime::from_energy(double energy) {
  if (energy == 0.0 || !std::isfinite(energy)) throw ThresholdError("intermediate energy sits on the threshold");
  Regime r;
  if (energy < 0.0) {
    r.tag = Branch::below_threshold;
    r.gamma_or_omega = std::sqrt(-2.0 * energy);
  } else {
    r.tag = Branch::above_threshold;
    r.gamma_or_omega = std::sqrt(2.0 * energy);
  }
  return r;
}

cd Regime::gamma() const { return above() ? cd(0.0, -gamma_or_omega) : cd(gamma_or_omega, 0.0); }

double Regime::energy() const {
  const double s = 0.5 * gamma_or_omega * gamma_or_omega;
  return above() ? s : -s;
}

cd free_resolvent_diag(double energy, double k) {
  const double den = energy - 0.5 * k * k;
  if (std::abs(den) < 1e-14) throw OnPoleError("free resolvent evaluated on its pole");
  return {1.0 / den, 0.0};
}

KernelIntegrals<cd> kernel_integrals(const Regime& regime, double g, double a) {
  if (!(regime.gamma_or_omega > 0.0)) throw ThresholdError("kernel integrals undefined at the threshold");
  return kernel_integrals(regime.gamma(), g, a);
}

cd resolvent_fourier_integral(const std::function<cd(double)>& r, double d, const Regime& regime,
                              const QuadratureSpec& spec) {
  using quad::Weight;
  const double q = regime.gamma_or_omega;
  if (!(q > 0.0)) throw ThresholdError("resolvent integral undefined at the threshold");
  const double dist = std::abs(d);
  const double sgn = d < 0 ? -1.0 : 1.0;
  const bool fourier = dist > 1e-14;

  // Fold onto k >= 0: R(k) e^{ikd} + R(-k) e^{-ikd} = cos(k|d|) P(k) + sin(k|d|) Q(k).
  auto P = [&](double k) { return r(k) + r(-k); };
  auto Q = [&](double k) { return sgn * cd(0.0, 1.0) * (r(k) - r(-k)); };
  auto g0 = [&](double k) { return 1.0 / (regime.energy() - 0.5 * k * k); };

  // int_lo^inf [cos P + sin Q] G0 on a region free of poles.
  auto tail = [&](double lo) {
    cd sum = 0.0;
    for (int part = 0; part < 2; ++part) {
      auto re_im = [part](cd z) { return part == 0 ? z.real() : z.imag(); };
      const cd unit = part == 0 ? cd(1.0, 0.0) : cd(0.0, 1.0);
      if (!fourier) {
        sum += unit * quad::integrate_to_infinity([&](double k) { return re_im(P(k)) * g0(k); }, lo, spec).value;
        continue;
      }
      sum += unit * quad::integrate_fourier([&](double k) { return re_im(P(k)) * g0(k); }, lo, dist,
                                            Weight::cosine, spec)
                        .value;
      sum += unit * quad::integrate_fourier([&](double k) { return re_im(Q(k)) * g0(k); }, lo, dist, Weight::sine,
                                            spec)
                        .value;
    }
    return sum;
  };

  if (!regime.above()) return tail(0.0);

  // Above threshold G0 = -2 / ((k - Omega)(k + Omega)) + i0: principal value on
  // [0, 2 Omega], regular tail beyond, and -i pi times the residue at k = Omega.
  auto folded = [&](double k) { return std::cos(k * dist) * P(k) + std::sin(k * dist) * Q(k); };
  cd pv = 0.0;
  for (int part = 0; part < 2; ++part) {
    const cd unit = part == 0 ? cd(1.0, 0.0) : cd(0.0, 1.0);
    auto f = [&, part](double k) {
      const cd v = folded(k) * (-2.0 / (k + q));
      return part == 0 ? v.real() : v.imag();
    };
    pv += unit * quad::principal_value(f, 0.0, 2.0 * q, q, spec).value;
  }
  const cd residue = cd(0.0, -std::numbers::pi) * folded(q) / q;
  return pv + tail(2.0 * q) + residue;
}

KernelIntegrals<cd> kernel_integrals_quadrature(const Regime& regime, double g, double a, const QuadratureSpec& spec) {
  auto one = [](double) { return cd(1.0, 0.0); };
  const double inv2pi = 0.5 / std::numbers::pi;
  const cd c0 = inv2pi * resolvent_fourier_integral(one, 0.0, regime, spec);
  const cd c2 = inv2pi * resolvent_fourier_integral(one, 2.0 * a, regime, spec);
  return {1.0 + g * c0, 1.0 + g * (c0 + c2), 1.0 + g * (c0 - c2), g * c2};
}

Eigen::MatrixXcd dyson_matrix(const DeltaPotential& potential, const Regime& regime) {
  const auto n = static_cast<Eigen::Index>(potential.size());
  const cd gamma = regime.gamma();
  Eigen::MatrixXcd d(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < n; ++j)
      d(l, j) = (l == j ? 1.0 : 0.0) +
                potential[j].strength * free_propagator(gamma, potential[l].position - potential[j].position);
  return d;
}

namespace {

constexpr double pole_tol = 1e-12;

DysonCoefficients tagged_pole(Eigen::Index n, int sign, double k) {
  DysonCoefficients c;
  c.values = Eigen::VectorXcd::Constant(n, cd(std::numeric_limits<double>::quiet_NaN(), 0.0));
  c.sign = sign;
  c.k = k;
  c.pole = true;
  c.rcond = 0.0;
  return c;
}

}  // namespace

DysonCoefficients coeff_single(double g, int sign, double omega, double k) {
  const double e0 = -0.5 * g * g;
  const double energy = e0 + sign * omega;
  const Regime regime = Regime::from_energy(energy);
  const auto ki = kernel_integrals(regime, g, 0.0);
  if (std::abs(ki.I) < pole_tol) return tagged_pole(1, sign, k);
  DysonCoefficients c;
  c.values.resize(1);
  c.values[0] = free_resolvent_diag(energy, k) / ki.I;
  c.sign = sign;
  c.k = k;
  return c;
}

DysonCoefficients coeff_double(double g, double a, int sign, double omega, double k) {
  const double k0 = solve_even_kappa(2.0 * g * a, a);
  const double energy = -0.5 * k0 * k0 + sign * omega;
  const Regime regime = Regime::from_energy(energy);
  const auto ki = kernel_integrals(regime, g, a);
  if (std::abs(ki.I1) < pole_tol || std::abs(ki.I2) < pole_tol) return tagged_pole(2, sign, k);
  const cd g0k = free_resolvent_diag(energy, k);
  const cd i(0.0, 1.0);
  DysonCoefficients c;
  c.values.resize(2);
  c.values[0] = g0k * (std::cos(k * a) / ki.I1 - i * std::sin(k * a) / ki.I2);
  c.values[1] = (g0k * std::exp(i * k * a) - ki.I3 * c.values[0]) / (ki.I1 - ki.I3);
  c.sign = sign;
  c.k = k;
  return c;
}

DysonCoefficients coeff_multi(const DeltaPotential& potential, double e0, int sign, double omega, double k) {
  const double energy = e0 + sign * omega;
  const Regime regime = Regime::from_energy(energy);
  const auto n = static_cast<Eigen::Index>(potential.size());
  const Eigen::MatrixXcd d = dyson_matrix(potential, regime);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(d);
  const double rcond = lu.rcond();
  if (rcond < pole_tol) return tagged_pole(n, sign, k);
  const cd g0k = free_resolvent_diag(energy, k);
  Eigen::VectorXcd b(n);
  for (Eigen::Index l = 0; l < n; ++l) b[l] = std::exp(cd(0.0, k * potential[l].position)) * g0k;
  DysonCoefficients c;
  c.values = lu.solve(b);
  c.sign = sign;
  c.k = k;
  c.rcond = rcond;
  return c;
}

}  // namespace ddpol
