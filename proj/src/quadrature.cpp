#include "ddpol/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <sstream>
#include <string>

#include "ddpol/errors.hpp"

namespace ddpol::quad {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
struct QawoDeleter {
  void operator()(gsl_integration_qawo_table* t) const { gsl_integration_qawo_table_free(t); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

Workspace make_workspace(std::size_t n) {
  static const bool handler_off = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)handler_off;
  return Workspace(gsl_integration_workspace_alloc(n));
}

double trampoline(double x, void* params) { return (*static_cast<const Integrand*>(params))(x); }

gsl_function wrap(const Integrand& f) {
  gsl_function g;
  g.function = &trampoline;
  g.params = const_cast<Integrand*>(&f);
  return g;
}

// Interval carrying the largest error estimate, for failure reports.
std::string worst_interval(const gsl_integration_workspace* w) {
  std::size_t worst = 0;
  for (std::size_t i = 1; i < w->size; ++i)
    if (w->elist[i] > w->elist[worst]) worst = i;
  std::ostringstream os;
  if (w->size > 0) os << "[" << w->alist[worst] << ", " << w->blist[worst] << "] err " << w->elist[worst];
  return os.str();
}

// GSL reports roundoff/iteration limits even when the estimate is well within
// any tolerance the callers care about; accept those.
Estimate finish(int status, double value, double error, const QuadratureSpec& spec,
                const gsl_integration_workspace* w, const char* what) {
  if (status != GSL_SUCCESS) {
    const double accept = std::max(1e3 * spec.abs_tol, 1e-8 * std::abs(value));
    if (!(error <= accept) || !std::isfinite(value)) {
      std::ostringstream os;
      os << what << ": " << gsl_strerror(status) << " (value " << value << ", error " << error
         << ", worst subinterval " << worst_interval(w) << ")";
      throw ConvergenceError(os.str());
    }
  }
  return {value, error};
}

}  // namespace

Estimate integrate(const Integrand& f, double lo, double hi, const QuadratureSpec& spec) {
  auto w = make_workspace(spec.limit);
  gsl_function g = wrap(f);
  double value = 0.0, error = 0.0;
  int status = gsl_integration_qag(&g, lo, hi, spec.abs_tol, spec.rel_tol, spec.limit, GSL_INTEG_GAUSS31,
                                   w.get(), &value, &error);
  return finish(status, value, error, spec, w.get(), "integrate");
}

Estimate integrate_to_infinity(const Integrand& f, double lo, const QuadratureSpec& spec) {
  auto w = make_workspace(spec.limit);
  gsl_function g = wrap(f);
  double value = 0.0, error = 0.0;
  int status = gsl_integration_qagiu(&g, lo, spec.abs_tol, spec.rel_tol, spec.limit, w.get(), &value, &error);
  return finish(status, value, error, spec, w.get(), "integrate_to_infinity");
}

Estimate integrate_fourier(const Integrand& f, double lo, double omega, Weight weight,
                           const QuadratureSpec& spec) {
  auto w = make_workspace(spec.limit);
  auto cycles = make_workspace(spec.limit);
  std::unique_ptr<gsl_integration_qawo_table, QawoDeleter> table(gsl_integration_qawo_table_alloc(
      omega, 1.0, weight == Weight::cosine ? GSL_INTEG_COSINE : GSL_INTEG_SINE, 50));
  gsl_function g = wrap(f);
  double value = 0.0, error = 0.0;
  int status = gsl_integration_qawf(&g, lo, spec.abs_tol, spec.limit, w.get(), cycles.get(), table.get(),
                                    &value, &error);
  return finish(status, value, error, spec, w.get(), "integrate_fourier");
}

Estimate principal_value(const Integrand& f, double lo, double hi, double pole, const QuadratureSpec& spec) {
  auto w = make_workspace(spec.limit);
  gsl_function g = wrap(f);
  double value = 0.0, error = 0.0;
  int status =
      gsl_integration_qawc(&g, lo, hi, pole, spec.abs_tol, spec.rel_tol, spec.limit, w.get(), &value, &error);
  return finish(status, value, error, spec, w.get(), "principal_value");
}

}  // namespace ddpol::quad
