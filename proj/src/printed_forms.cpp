#include "ddpol/printed_forms.hpp"

#include <cmath>

#include "ddpol/bound_states.hpp"
#include "ddpol/closed_form.hpp"

namespace ddpol {

PrintedAboveTerms printed_above_terms(double w, double k0, double a, double g) {
  using std::cos;
  using std::exp;
  using std::sin;
  PrintedAboveTerms t;
  const double W = 2.0 * (w - 0.5 * k0 * k0);
  const double om = std::sqrt(W);  // Omega
  const double k2 = k0 * k0, o2 = om * om;
  const double e2k = exp(-2.0 * k0 * a);
  const double np2 = 2.0 * k0 / (exp(2.0 * k0 * a) + 2.0 * k0 * a + 1.0);
  const double s = sin(2.0 * a * om), c = cos(2.0 * a * om);

  t.p1_I = -k0 / (16.0 * w) *
           (2.0 * a * a * (3.0 * k2 + o2) / k2 +
            (-5.0 * k2 + 15.0 * o2 + 5.0 * o2 * o2 / k2 + o2 * o2 * o2 / (k2 * k2)) / (4.0 * w * w));
  t.p1_II = k0 * e2k / 24.0 *
            (-(4.0 * a * a * a * k2 * k0 + 16.0 * a * a * k2 + 3.0) / (k2 * k2) +
             (5.0 * a * a * o2 - a * a * k2 - 4.0 * a * k0 - 3.0) / (k2 * w) - a * (5.0 * k2 + 3.0 * o2) / (k2 * k0 * w) +
             3.0 * (k2 - o2) / (w * w * w));
  t.p1_III = k0 / (4.0 * w) * (a * a * k0 * s / om + 2.0 * a * k0 * c / w - om * k0 * s / (w * w));
  t.p1_IV = k0 / (4.0 * w) * (a * a * k0 / om + om * k0 / (w * w));
  t.alpha_p1 = 2.0 / (e2k * w) * np2 * std::complex<double>(t.p1_I + t.p1_II + t.p1_III, t.p1_IV);

  t.A = -a / k0 + a * s / om - a * e2k / k0 + c / w - e2k / w;
  t.B = (om - g * s) * (om - g * s) + g * g;
  const double q = t.A * t.A - a * a / o2;
  t.p2_I = om * (om - g * s) * q - 2.0 * a * t.A * g;
  t.p2_II = 2.0 * a * t.A * (om - g * s) + om * g * q;
  t.alpha_p2 = g * k2 / (e2k * 2.0 * w * w * t.B) * np2 * std::complex<double>(t.p2_I, t.p2_II);
  return t;
}

PrintedDeviation printed_deviation(double w, const ScaledParams& s) {
  PrintedDeviation d;
  d.omega_over_omegaB = w;
  d.implemented = alpha_closed_form(w, s).value;
  const double k0 = solve_even_kappa(s.p, s.a);
  const double omega = w * 0.5 * k0 * k0;
  const auto minus = appendix_terms_at(w, -1, s).alpha_plus();
  std::complex<double> plus;
  if (w < 1.0) {
    plus = appendix_terms_at(w, +1, s).alpha_plus();
  } else {
    const auto t = printed_above_terms(omega, k0, s.a, s.g_prime);
    plus = t.alpha_p1 + t.alpha_p2;
  }
  d.printed = (plus + minus) * s.atomic_units_factor();
  d.relative = std::abs(d.printed - d.implemented) / std::abs(d.implemented);
  return d;
}

}  // namespace ddpol
