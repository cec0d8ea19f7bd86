#include "ddpol/tridiagonal.hpp"

#include <algorithm>
#include <limits>

namespace ddpol {

std::size_t sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double sigma) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t count = 0;
  double q = 1.0;
  for (Eigen::Index i = 0; i < diag.size(); ++i) {
    q = diag[i] - sigma - (i > 0 ? off[i - 1] * off[i - 1] / q : 0.0);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const Eigen::VectorXd& diag, const Eigen::VectorXd& off) {
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  const Eigen::Index n = diag.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(off[i]) : 0.0);
    lo = std::min(lo, diag[i] - r);
    hi = std::max(hi, diag[i] + r);
  }
  return {lo, hi};
}

double sturm_eigenvalue(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, std::size_t index, double lo,
                        double hi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diag, off, mid) > index)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd inverse_iteration(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                                  int iterations) {
  const Eigen::Index n = diag.size();
  const double scale = std::max(1.0, diag.cwiseAbs().maxCoeff());
  const double shift = lambda - 1e-13 * scale;
  Eigen::VectorXd v(n);
  // deterministic start vector with no special symmetry
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + 0.3);
  v.normalize();
  const Eigen::VectorXd d = diag.array() - shift;
  for (int it = 0; it < iterations; ++it) {
    v = solve_tridiagonal<double>(off, d, off, v);
    v.normalize();
  }
  return v;
}

}  // namespace ddpol
