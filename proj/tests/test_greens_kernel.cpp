#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "ddpol/bound_states.hpp"
#include "ddpol/closed_form.hpp"
#include "ddpol/errors.hpp"
#include "ddpol/greens_kernel.hpp"
#include "support/oracles.hpp"

using namespace ddpol;
using cd = std::complex<double>;

namespace {

const double a1 = 0.5 * constants::bohr_per_angstrom;

// (1/2pi) int exp(iqd) / (E - q^2/2) dq for E < 0, by panels on [0, Q] plus an
// integration-by-parts tail.
double propagator_by_quadrature(double energy, double d) {
  const double g2 = -2.0 * energy;
  auto h = [&](double q) { return -2.0 / (q * q + g2); };
  d = std::abs(d);
  if (d == 0.0) {
    const double gamma = std::sqrt(g2);
    const double v = oracle::integrate([&](double t) { return h(gamma * std::tan(t)) * gamma / std::pow(std::cos(t), 2); },
                                       0.0, 0.5 * std::numbers::pi, 40);
    return v / std::numbers::pi;
  }
  const double Q = 2000.0;
  const int panels = static_cast<int>(Q * d / 2.0) + 400;
  double v = oracle::integrate([&](double q) { return std::cos(q * d) * h(q); }, 0.0, Q, panels, 12);
  const double hq = h(Q), dh = 4.0 * Q / std::pow(Q * Q + g2, 2);
  v += -std::sin(Q * d) * hq / d - std::cos(Q * d) * dh / (d * d);
  return v / std::numbers::pi;
}

// Dyson coefficients from the integrated Dyson equation with propagators from
// the quadrature above.
Eigen::VectorXcd dyson_by_quadrature(const DeltaPotential& v, double energy, double k) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXcd m(n, n);
  Eigen::VectorXcd b(n);
  const double g0k = 1.0 / (energy - 0.5 * k * k);
  for (Eigen::Index l = 0; l < n; ++l) {
    b[l] = std::exp(cd(0.0, k * v[l].position)) * g0k;
    for (Eigen::Index j = 0; j < n; ++j)
      m(l, j) = (l == j ? 1.0 : 0.0) + v[j].strength * propagator_by_quadrature(energy, v[l].position - v[j].position);
  }
  return m.fullPivLu().solve(b);
}

}  // namespace

TEST_SUITE("greens-kernel") {
  TEST_CASE("free resolvent") {
    CHECK(free_resolvent_diag(-0.5, 0.0) == cd(-2.0, 0.0));
    const double gamma = 0.83;
    for (double k : {0.0, 0.4, 3.0}) CHECK(free_resolvent_diag(-0.5 * gamma * gamma, k).real() ==
                                           doctest::Approx(-2.0 / (k * k + gamma * gamma)).epsilon(1e-15));
    const double om = 1.1;
    CHECK_THROWS_AS(free_resolvent_diag(0.5 * om * om, om), OnPoleError);
  }

  TEST_CASE("regime classification") {
    const auto below = Regime::from_energy(-0.32);
    CHECK_FALSE(below.above());
    CHECK(below.gamma_or_omega == doctest::Approx(0.8));
    const auto above = Regime::from_energy(0.32);
    CHECK(above.above());
    CHECK(above.gamma() == cd(0.0, -0.8));
    // Omega^2 = -gamma^2 under the continuation
    CHECK(std::abs(above.gamma() * above.gamma() + 0.64) < 1e-15);
    CHECK_THROWS_AS(Regime::from_energy(0.0), ThresholdError);
  }

  TEST_CASE("closed-form kernel integrals") {
    const double g = 0.6, a = 0.9;
    SUBCASE("below threshold: explicit formulas, all real") {
      const double gamma = 1.3;
      const auto ki = kernel_integrals(Regime::from_energy(-0.5 * gamma * gamma), g, a);
      const double e = std::exp(-2 * gamma * a);
      CHECK(ki.I.real() == doctest::Approx(1 - g / gamma));
      CHECK(ki.I1.real() == doctest::Approx(1 - g / gamma * (1 + e)));
      CHECK(ki.I2.real() == doctest::Approx(1 - g / gamma * (1 - e)));
      CHECK(ki.I3.real() == doctest::Approx(-g / gamma * e));
      for (cd z : {ki.I, ki.I1, ki.I2, ki.I3}) CHECK(z.imag() == 0.0);
    }
    SUBCASE("above threshold: -1/gamma -> -i/Omega, exp(-2 gamma a) -> exp(2 i Omega a)") {
      const double om = 0.7;
      const auto ki = kernel_integrals(Regime::from_energy(0.5 * om * om), g, a);
      const cd i(0, 1);
      const cd e = std::exp(2.0 * i * om * a);
      CHECK(std::abs(ki.I - (1.0 - i * g / om)) < 1e-15);
      CHECK(std::abs(ki.I2 - (1.0 - i * g / om * (1.0 - e))) < 1e-15);
      CHECK(std::abs(ki.I3 - (-i * g / om * e)) < 1e-15);
    }
    SUBCASE("a -> infinity") {
      const double gamma = 0.6;
      const auto ki = kernel_integrals(Regime::from_energy(-0.5 * gamma * gamma), 0.6, 200.0);
      CHECK(std::abs(ki.I2 - (1.0 - 0.6 / gamma)) < 1e-15);
      CHECK(std::abs(ki.I2) < 1e-15);
    }
    SUBCASE("free limit") {
      const auto ki = kernel_integrals(Regime::from_energy(-0.4), 1e-14, 0.8);
      CHECK(std::abs(ki.I - 1.0) < 1e-13);
      CHECK(std::abs(ki.I1 - 1.0) < 1e-13);
      CHECK(std::abs(ki.I2 - 1.0) < 1e-13);
      CHECK(std::abs(ki.I3) < 1e-13);
    }
  }

  TEST_CASE("I2 vanishes at the odd bound state") {
    const double p = 1.5;
    const double k1 = *solve_odd_kappa(p, a1);
    const auto ki = kernel_integrals(Regime::from_energy(-0.5 * k1 * k1), p / (2 * a1), a1);
    CHECK(std::abs(ki.I2) < 1e-10);
  }

  TEST_CASE("closed forms agree with quadrature of the defining integrals") {
    const double g = 0.79, a = a1;
    for (double energy : {-0.9, -0.2, -0.01, 0.05, 0.4, 2.5}) {
      CAPTURE(energy);
      const Regime r = Regime::from_energy(energy);
      const auto cf = kernel_integrals(r, g, a);
      const auto qd = kernel_integrals_quadrature(r, g, a);
      CHECK(std::abs(cf.I - qd.I) < 1e-8);
      CHECK(std::abs(cf.I1 - qd.I1) < 1e-8);
      CHECK(std::abs(cf.I2 - qd.I2) < 1e-8);
      CHECK(std::abs(cf.I3 - qd.I3) < 1e-8);
    }
  }

  TEST_CASE("analytic continuation of the kernel at matching |gamma|") {
    const double g = 0.5, a = 1.1, mag = 0.9;
    const auto cont = kernel_integrals(cd(0.0, -mag), g, a);
    const auto above = kernel_integrals(Regime::from_energy(0.5 * mag * mag), g, a);
    CHECK(std::abs(cont.I1 - above.I1) < 1e-15);
    CHECK(std::abs(cont.I2 - above.I2) < 1e-15);
    const auto below = kernel_integrals(Regime::from_energy(-0.5 * mag * mag), g, a);
    CHECK(std::abs(kernel_integrals(cd(mag, 0.0), g, a).I2 - below.I2) < 1e-15);
  }

  TEST_CASE("coeff_single") {
    SUBCASE("free limit gives G0k") {
      const auto c = coeff_single(1e-13, +1, 0.3, 0.7);
      const double energy = -0.5e-26 + 0.3;
      CHECK(std::abs(c.values[0] - free_resolvent_diag(energy, 0.7)) < 1e-10);
    }
    SUBCASE("below threshold: real, and A(k)* = A(k)") {
      const auto c = coeff_single(0.8, -1, 0.1, 0.45);
      CHECK(c.values[0].imag() == 0.0);
      CHECK_FALSE(c.pole);
    }
    SUBCASE("integral-equation oracle") {
      const double g = 0.8, omega = 0.13, k = 0.61;
      for (int sign : {+1, -1}) {
        const double energy = -0.5 * g * g + sign * omega;
        const auto ref = dyson_by_quadrature(DeltaPotential::single(g), energy, k);
        CHECK(std::abs(coeff_single(g, sign, omega, k).values[0] - ref[0]) < 1e-8 * std::abs(ref[0]));
      }
    }
    SUBCASE("pole is tagged, not thrown") {
      // E0 + omega = E0 puts the intermediate energy on the bound state: I = 0
      const auto c = coeff_single(0.8, +1, 0.0, 0.3);
      CHECK(c.pole);
      CHECK(std::isnan(c.values[0].real()));
    }
  }

  TEST_CASE("coeff_double") {
    const double p = 1.5, g = p / (2 * a1), k0 = solve_even_kappa(p, a1);
    SUBCASE("k = 0 is the pure even channel") {
      const double omega = 0.1;
      const auto c = coeff_double(g, a1, +1, omega, 0.0);
      const double energy = -0.5 * k0 * k0 + omega;
      const auto ki = kernel_integrals(Regime::from_energy(energy), g, a1);
      CHECK(std::abs(c.values[0] - free_resolvent_diag(energy, 0.0) / ki.I1) < 1e-14);
    }
    SUBCASE("parity A2(k) = A1(-k)") {
      for (double omega : {0.05, 0.3, 0.9}) {
        for (int sign : {+1, -1}) {
          const double k = 0.77;
          const auto plus = coeff_double(g, a1, sign, omega, k);
          const auto minus = coeff_double(g, a1, sign, omega, -k);
          CHECK(std::abs(plus.values[1] - minus.values[0]) < 1e-12 * std::abs(plus.values[1]));
        }
      }
    }
    SUBCASE("below threshold A1(k)* = A1(-k)") {
      const auto plus = coeff_double(g, a1, +1, 0.1, 0.9);
      const auto minus = coeff_double(g, a1, +1, 0.1, -0.9);
      CHECK(std::abs(std::conj(plus.values[0]) - minus.values[0]) < 1e-14);
    }
    SUBCASE("integral-equation oracle") {
      for (double omega : {0.08, 0.2}) {
        const double energy = -0.5 * k0 * k0 + omega;
        const auto ref = dyson_by_quadrature(DeltaPotential::symmetric_double(a1, g), energy, 0.53);
        const auto c = coeff_double(g, a1, +1, omega, 0.53);
        CHECK((c.values - ref).norm() < 1e-8 * ref.norm());
      }
    }
    SUBCASE("|A1| grows without bound approaching the I2 zero") {
      const auto s = build_scaled({1.0, 1.0, 0.5}, p);
      const double w_res = *resonance_locate(s);
      const double omega_b = 0.5 * k0 * k0;
      double last = 0.0;
      for (double gap : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const double mag = std::abs(coeff_double(g, a1, +1, (w_res - gap) * omega_b, 0.7).values[0]);
        CHECK(mag > 10.0 * last);
        last = mag;
      }
    }
  }

  TEST_CASE("coeff_multi") {
    SUBCASE("N = 1 reduces to coeff_single") {
      const double g = 0.6;
      const auto ref = coeff_single(g, +1, 0.05, 0.4);
      const auto c = coeff_multi(DeltaPotential::single(g), -0.5 * g * g, +1, 0.05, 0.4);
      CHECK(std::abs(c.values[0] - ref.values[0]) < 1e-10 * std::abs(ref.values[0]));
    }
    SUBCASE("N = 2 symmetric reduces to coeff_double in both regimes") {
      const double p = 1.5, g = p / (2 * a1), k0 = solve_even_kappa(p, a1);
      for (double omega : {0.05, 0.2, 0.7, 1.3}) {
        for (int sign : {+1, -1}) {
          const auto ref = coeff_double(g, a1, sign, omega, 0.66);
          const auto c = coeff_multi(DeltaPotential::symmetric_double(a1, g), -0.5 * k0 * k0, sign, omega, 0.66);
          CHECK((c.values - ref.values).norm() < 1e-10 * ref.values.norm());
        }
      }
    }
    SUBCASE("N = 3 against the integral-equation oracle") {
      const DeltaPotential v({{-1.7, 0.5}, {0.0, 0.9}, {1.2, 0.4}});
      const double e0 = multi_delta_spectrum(v).states.front().energy;
      for (int sign : {+1, -1}) {
        const double omega = 0.1;
        const auto ref = dyson_by_quadrature(v, e0 + sign * omega, 0.37);
        const auto c = coeff_multi(v, e0, sign, omega, 0.37);
        CHECK((c.values - ref).norm() < 1e-6 * ref.norm());
      }
    }
    SUBCASE("near-singular system is reported") {
      const DeltaPotential v({{-1.7, 0.5}, {0.0, 0.9}, {1.2, 0.4}});
      const auto sp = multi_delta_spectrum(v);
      REQUIRE(sp.states.size() >= 2);
      const double e0 = sp.states[0].energy, e1 = sp.states[1].energy;
      const auto at = coeff_multi(v, e0, +1, e1 - e0, 0.2);
      CHECK(at.pole);
      const auto near = coeff_multi(v, e0, +1, (e1 - e0) * (1 - 1e-7), 0.2);
      CHECK(near.rcond < 1e-5);
      const auto far = coeff_multi(v, e0, +1, 0.3 * (e1 - e0), 0.2);
      CHECK(far.rcond > 1e-3);
    }
  }

  TEST_CASE("dipole element against quadrature of its definition") {
    // (1/sqrt(2 pi)) int x exp(-ikx) psi0(x) dx = -i/sqrt(2 pi) int x sin(kx) psi0(x) dx
    const double p = 0.5;
    const oracle::DoubleWellGround psi(p, a1);
    const auto state = ground_state(p, a1);
    for (double k : {psi.k0, 0.1, 2.7}) {
      const double L = a1 + 60.0 / psi.k0;
      auto f = [&](double x) { return x * std::sin(k * x) * psi(x); };
      const double val = 2.0 * (oracle::integrate(f, 0.0, a1, 40) + oracle::integrate(f, a1, L, 2000));
      const cd ref(0.0, -val / std::sqrt(2 * std::numbers::pi));
      const cd m = dipole_matrix_element(k, state);
      CHECK(std::abs(m - ref) < 1e-10 * std::abs(ref));
      CHECK(std::abs(m.real()) <= 1e-14 * std::abs(m));
      CHECK(std::abs(dipole_matrix_element(-k, state) + m) < 1e-15 * std::abs(m));
    }
    CHECK(std::abs(dipole_matrix_element(0.0, state)) < 1e-16);
    // k^-2 envelope: k^2 |M(k)| stays bounded and does not vanish
    double lo = 1e300, hi = 0.0;
    for (double k = 50.0; k < 5e4; k *= 1.37) {
      const double v = k * k * std::abs(dipole_matrix_element(k, state));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi < 1.0);
    CHECK(hi > 1e-3);
  }
}
