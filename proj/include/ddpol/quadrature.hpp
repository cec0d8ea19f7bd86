#pragma once

#include <cstddef>
#include <functional>

namespace ddpol {

/// Tolerances for the adaptive integrators. The pole of the free resolvent
/// above threshold is always treated as principal value plus residue.
struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;
  std::size_t limit = 4000;
};

namespace quad {

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

using Integrand = std::function<double(double)>;
enum class Weight { cosine, sine };

/// Adaptive Gauss-Kronrod on [lo, hi].
Estimate integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec);
/// int_lo^inf f(x) dx.
Estimate integrate_to_infinity(const Integrand& f, double lo, const QuadratureSpec& spec);
/// int_lo^inf f(x) cos(omega x) dx or the sine variant; omega > 0.
Estimate integrate_fourier(const Integrand& f, double lo, double omega, Weight w, const QuadratureSpec& spec);
/// PV int_lo^hi f(x) / (x - pole) dx with lo < pole < hi.
Estimate principal_value(const Integrand& f, double lo, double hi, double pole, const QuadratureSpec& spec);

}  // namespace quad
}  // namespace ddpol
