#include "ddpol/closed_form.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "ddpol/errors.hpp"
#include "ddpol/greens_kernel.hpp"
#include "ddpol/roots.hpp"

namespace ddpol {

using cd = std::complex<double>;
using wide = boost::multiprecision::cpp_bin_float_50;

namespace {

// Below this the closed form is evaluated in 50-digit arithmetic.
constexpr double wide_precision_cutoff = 0.2;

void check_frequency(double w) {
  if (!(w >= 0.0) || !std::isfinite(w)) throw ConfigError("frequency must be a non-negative finite number");
  if (std::abs(w - 1.0) < threshold_exclusion)
    throw ThresholdError("frequency inside the threshold exclusion zone around omega_B");
}

PolarizabilityPoint make_point(double w, cd value, FrequencyRegime regime, const ScaledParams& s) {
  PolarizabilityPoint pt;
  pt.omega_over_omegaB = w;
  pt.value = value * s.atomic_units_factor();
  pt.regime = regime;
  pt.method = Method::closed_form;
  if (auto res = resonance_locate(s)) pt.pole_proximity = std::abs(w - *res);
  return pt;
}

// alpha_+(omega) + alpha_+(-omega) below threshold in precision Real.
template <class Real>
Real alpha_below_scaled(double w, double p, double a_in) {
  using std::sqrt;
  const Real pp(p), a(a_in);
  const Real k0 = even_root(pp) / a;
  const Real g = pp / (2 * a);
  const Real omega = Real(w) * k0 * k0 / 2;
  const Real gp = sqrt(k0 * k0 - 2 * omega);
  const Real gm = sqrt(k0 * k0 + 2 * omega);
  return appendix_terms(gp, omega, k0, a, g).alpha_plus() + appendix_terms(gm, Real(-omega), k0, a, g).alpha_plus();
}

}  // namespace

cd dipole_orbital_term(double k, const BoundState& s, Eigen::Index j, double center) {
  const double kap = s.kappa;
  const double den = k * k + kap * kap;
  const double pref = 2.0 * kap * s.coefficients[j] / std::sqrt(2.0 * std::numbers::pi);
  // i * d/dk of the orbital transform, with x_j measured from `center`.
  return cd(0.0, 1.0) * pref * cd(-2.0 * k / (den * den), -(s.centers[j] - center) / den);
}

cd dipole_matrix_element(double k, const BoundState& s, double center) {
  cd m = 0.0;
  for (Eigen::Index j = 0; j < s.centers.size(); ++j)
    m += std::exp(cd(0.0, -k * s.centers[j])) * dipole_orbital_term(k, s, j, center);
  return m;
}

PolarizabilityPoint alpha_static(const ScaledParams& s) {
  const double k0 = solve_even_kappa(s.p, s.a);
  const double v = static_polarizability_scaled(k0, s.a, s.g_prime);
  return make_point(0.0, v, FrequencyRegime::below, s);
}

std::optional<double> resonance_locate(const ScaledParams& s) {
  if (!(s.p > 1.0)) return std::nullopt;
  const double k0 = solve_even_kappa(s.p, s.a);
  auto i2 = [&](double w) { return kernel_integrals(k0 * std::sqrt(1.0 - w), s.g_prime, s.a).I2; };
  return bracketed_root<double>(i2, 0.0, 1.0 - 1e-15, 1e-15);
}

PolarizabilityPoint alpha_below(double w, const ScaledParams& s) {
  check_frequency(w);
  if (w >= 1.0) throw ConfigError("alpha_below requires omega < omega_B");
  if (w == 0.0) return alpha_static(s);

  const double k0 = solve_even_kappa(s.p, s.a);
  const double i2 = kernel_integrals(k0 * std::sqrt(1.0 - w), s.g_prime, s.a).I2;
  if (std::abs(i2) < pole_exclusion) {
    auto pt = make_point(w, cd(std::numeric_limits<double>::quiet_NaN(), 0.0), FrequencyRegime::below, s);
    pt.at_pole = true;
    return pt;
  }
  const double v = w < wide_precision_cutoff ? alpha_below_scaled<wide>(w, s.p, s.a).convert_to<double>()
                                             : alpha_below_scaled<double>(w, s.p, s.a);
  return make_point(w, cd(v, 0.0), FrequencyRegime::below, s);
}

PolarizabilityPoint alpha_above(double w, const ScaledParams& s) {
  check_frequency(w);
  if (w <= 1.0) throw ConfigError("alpha_above requires omega > omega_B");
  const auto plus = appendix_terms_at(w, +1, s);
  const auto minus = appendix_terms_at(w, -1, s);
  // the -omega branch lies below its own threshold, so minus.alpha_plus() is real
  const cd v = plus.alpha_plus() + minus.alpha_plus();
  return make_point(w, v, FrequencyRegime::above, s);
}

PolarizabilityPoint alpha_closed_form(double w, const ScaledParams& s) {
  check_frequency(w);
  return w < 1.0 ? alpha_below(w, s) : alpha_above(w, s);
}

AppendixTerms<cd> appendix_terms_at(double w, int sign, const ScaledParams& s) {
  const double k0 = solve_even_kappa(s.p, s.a);
  const double omega = sign * w * 0.5 * k0 * k0;
  const double e = k0 * k0 - 2.0 * omega;  // gamma^2
  const cd gamma = e > 0.0 ? cd(std::sqrt(e), 0.0) : cd(0.0, -std::sqrt(-e));
  if (e == 0.0) throw ThresholdError("closed-form terms diverge at the threshold");
  return appendix_terms(gamma, omega, k0, s.a, s.g_prime);
}

}  // namespace ddpol
