#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "ddpol/closed_form.hpp"
#include "ddpol/errors.hpp"
#include "ddpol/oracle.hpp"
#include "ddpol/tridiagonal.hpp"

namespace ddpol {

namespace {

using cd = std::complex<double>;

double smallest_offset(const DeltaPotential& v, double center) {
  double base = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double off = std::abs(v[j].position - center);
    if (off > 1e-14) base = std::min(base, off);
    if (j + 1 < v.size()) base = std::min(base, 0.5 * (v[j + 1].position - v[j].position));
  }
  return base;
}

double outermost(const DeltaPotential& v, double center) {
  return std::max(std::abs(v.wells().front().position - center), std::abs(v.wells().back().position - center));
}

std::size_t node_of(const GridSpec& grid, double x) {
  const double r = (x - grid.node(0)) / grid.spacing();
  const double n = std::round(r);
  if (std::abs(r - n) > 1e-7 || n < 1 || n > static_cast<double>(grid.points) - 2)
    throw ConfigError("grid: well at x = " + std::to_string(x) + " is not on an interior node");
  return static_cast<std::size_t>(n);
}

void check_omega(double w) {
  if (!std::isfinite(w) || w < 0.0) throw ConfigError("omega/omega_B must be finite and non-negative");
  if (std::abs(w - 1.0) < threshold_exclusion) throw ThresholdError("omega inside the threshold exclusion zone");
}

// Ghost-node ratio psi_{-1} / psi_0 of the free discrete equation at energy E:
// decaying below threshold, outgoing above.
cd boundary_ratio(double energy, double h) {
  const double c = 1.0 - energy * h * h;
  if (energy < 0.0) return c - std::sqrt(c * c - 1.0);
  if (c <= -1.0) throw ConfigError("grid too coarse for the propagating wavelength");
  return {c, std::sqrt(1.0 - c * c)};
}

template <class Scalar>
Scalar response(const GridHamiltonian& ham, const Eigen::VectorXd& rhs, double energy, Scalar z,
                const Eigen::VectorXcd* cap) {
  const Eigen::Index n = ham.diag.size();
  const double t = 0.5 / (ham.h * ham.h);
  Vec<Scalar> d(n), off = Vec<Scalar>::Constant(n - 1, Scalar(t));
  for (Eigen::Index i = 0; i < n; ++i) d[i] = Scalar(energy - ham.diag[i]);
  if (cap) {
    if constexpr (std::is_same_v<Scalar, cd>) d += *cap;
  } else {
    d[0] += z * t;
    d[n - 1] += z * t;
  }
  const Vec<Scalar> psi = solve_tridiagonal<Scalar>(off, d, off, rhs.cast<Scalar>());
  return ham.h * rhs.cast<Scalar>().dot(psi);
}

// alpha in scaled units on one grid, ground state and energies all discrete.
cd grid_alpha_once(double omega, const GridSpec& grid, const DeltaPotential& v, bool absorbing) {
  GridHamiltonian ham = grid_hamiltonian(grid, v);
  GridGroundState g0 = grid_ground_state(ham);
  std::optional<Eigen::VectorXcd> cap;
  const double e_plus = g0.energy + omega;
  if (absorbing && e_plus > 0.0) {
    const double kin = std::sqrt(2.0 * e_plus);
    const double ramp = 20.0 * 2.0 * std::numbers::pi / kin;
    const GridSpec big = grid.enlarged((grid.box_half_length + ramp) / grid.box_half_length);
    ham = grid_hamiltonian(big, v);
    g0 = grid_ground_state(ham);
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(ham.diag.size());
    const double eta = 4.0 * e_plus;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      const double depth = std::abs(ham.x[i] - big.center) - grid.box_half_length;
      if (depth > 0.0) c[i] = cd(0.0, eta * (depth / ramp) * (depth / ramp));
    }
    cap = c;
  }
  const double xbar = ham.h * (ham.x.array() * g0.psi.array().square()).sum();
  const Eigen::VectorXd rhs = (ham.x.array() - xbar) * g0.psi.array();

  cd total = 0.0;
  for (int sign : {+1, -1}) {
    const double e = g0.energy + sign * omega;
    if (e == 0.0) throw ThresholdError("grid energy sits exactly on the threshold");
    if (cap) {
      total += response<cd>(ham, rhs, e, cd(0.0), &*cap);
    } else if (e < 0.0) {
      total += response<double>(ham, rhs, e, boundary_ratio(e, ham.h).real(), nullptr);
    } else {
      total += response<cd>(ham, rhs, e, boundary_ratio(e, ham.h), nullptr);
    }
  }
  return -total;
}

struct SumParts {
  double total = 0.0, bound = 0.0, continuum = 0.0, trk = 0.0;
  std::size_t states = 0;
  Eigen::VectorXd energies, elements;
};

SumParts box_sum_once(const GridSpec& grid, const DeltaPotential& v, bool parity, bool keep) {
  const auto ham = grid_hamiltonian(grid, v);
  const auto g0 = grid_ground_state(ham);
  const double h = ham.h;
  const double xbar = h * (ham.x.array() * g0.psi.array().square()).sum();
  const Eigen::VectorXd f = (ham.x.array() - xbar) * g0.psi.array();

  Eigen::Index first = 0;
  Eigen::Index n = ham.diag.size();
  double weight = 1.0;
  bool skip_ground = true;
  if (parity) {
    // odd sector: nodes right of the centre with psi(centre) = 0
    first = (n - 1) / 2 + 1;
    n = n - first;
    weight = std::numbers::sqrt2;
    skip_ground = false;
  }
  const Eigen::VectorXd d = ham.diag.segment(first, n);
  const Eigen::VectorXd e = ham.off.segment(first, n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  SumParts out;
  std::vector<double> es, xs;
  for (Eigen::Index m = skip_ground ? 1 : 0; m < lambda.size(); ++m) {
    const Eigen::VectorXd u = inverse_iteration(d, e, lambda[m]) / std::sqrt(h);
    const double el = weight * h * u.dot(f.segment(first, n));
    const double de = lambda[m] - g0.energy;
    const double term = 2.0 * el * el / de;
    out.total += term;
    (lambda[m] < 0.0 ? out.bound : out.continuum) += term;
    out.trk += 2.0 * de * el * el;
    ++out.states;
    if (keep) {
      es.push_back(lambda[m]);
      xs.push_back(el);
    }
  }
  if (keep) {
    out.energies = Eigen::Map<Eigen::VectorXd>(es.data(), static_cast<Eigen::Index>(es.size()));
    out.elements = Eigen::Map<Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
  }
  return out;
}

SumParts richardson(const SumParts& coarse, SumParts fine) {
  auto ex = [](double c, double f) { return (4.0 * f - c) / 3.0; };
  fine.total = ex(coarse.total, fine.total);
  fine.bound = ex(coarse.bound, fine.bound);
  fine.continuum = ex(coarse.continuum, fine.continuum);
  return fine;
}

double ground_kappa(const DeltaPotential& v) { return multi_delta_spectrum(v).states.front().kappa; }

}  // namespace

GridSpec GridSpec::refined(int factor) const {
  return {box_half_length, (points - 1) * static_cast<std::size_t>(factor) + 1, center};
}

GridSpec GridSpec::enlarged(double factor) const {
  const std::size_t half = (points - 1) / 2;
  const auto bigger = static_cast<std::size_t>(std::ceil(static_cast<double>(half) * factor - 1e-9));
  return {spacing() * static_cast<double>(bigger), 2 * bigger + 1, center};
}

GridSpec make_grid(const DeltaPotential& v, double kappa, double box_factor, double max_wavenumber) {
  if (!(kappa > 0.0) || !(box_factor > 0.0)) throw ConfigError("make_grid: kappa and box factor must be positive");
  const double center = v.center();
  const double base = smallest_offset(v, center);
  double hmax = 0.1 / kappa;
  if (max_wavenumber > 0.0) hmax = std::min(hmax, 0.1 / max_wavenumber);
  double h = hmax;
  if (std::isfinite(base)) {
    hmax = std::min(hmax, base / 20.0);
    h = base / std::ceil(base / hmax - 1e-12);
  }
  const double extent = outermost(v, center) + box_factor / kappa;
  const auto half = static_cast<std::size_t>(std::ceil(extent / h - 1e-9));
  GridSpec grid{h * static_cast<double>(half), 2 * half + 1, center};
  for (const auto& w : v.wells()) node_of(grid, w.position);
  return grid;
}

void validate_grid(const GridSpec& grid, const DeltaPotential& v, double kappa, double box_factor) {
  if (grid.points < 5 || grid.points % 2 == 0) throw ConfigError("grid: need an odd number of at least 5 points");
  if (!(grid.box_half_length > 0.0)) throw ConfigError("grid: box half length must be positive");
  const double base = smallest_offset(v, grid.center);
  const double limit = std::min(0.1 / kappa, std::isfinite(base) ? base / 20.0 : 0.1 / kappa);
  if (grid.spacing() > limit * (1.0 + 1e-12)) throw ConfigError("grid: spacing too coarse");
  if (grid.box_half_length < box_factor / kappa) throw ConfigError("grid: box too small");
  for (const auto& w : v.wells()) node_of(grid, w.position);
}

GridHamiltonian grid_hamiltonian(const GridSpec& grid, const DeltaPotential& v) {
  const auto n = static_cast<Eigen::Index>(grid.points);
  const double h = grid.spacing();
  GridHamiltonian ham;
  ham.h = h;
  ham.diag = Eigen::VectorXd::Constant(n, 1.0 / (h * h));
  ham.off = Eigen::VectorXd::Constant(n - 1, -0.5 / (h * h));
  ham.x.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) ham.x[i] = grid.node(static_cast<std::size_t>(i));
  for (const auto& w : v.wells()) ham.diag[static_cast<Eigen::Index>(node_of(grid, w.position))] -= w.strength / h;
  return ham;
}

GridGroundState grid_ground_state(const GridHamiltonian& ham) {
  const auto [lo, hi] = gershgorin_bounds(ham.diag, ham.off);
  (void)hi;
  if (sturm_count(ham.diag, ham.off, 0.0) == 0) throw ConvergenceError("grid Hamiltonian has no bound state");
  GridGroundState g;
  g.energy = sturm_eigenvalue(ham.diag, ham.off, 0, lo, 0.0);
  g.psi = inverse_iteration(ham.diag, ham.off, g.energy) / std::sqrt(ham.h);
  if (g.psi.sum() < 0.0) g.psi = -g.psi;
  return g;
}

PolarizabilityPoint alpha_grid_inhomogeneous(double w, const ScaledParams& s, const DeltaPotential& v,
                                             const GridOptions& opt) {
  check_omega(w);
  const double kappa = ground_kappa(v);
  const double omega_b = 0.5 * kappa * kappa;
  // exactly at omega = 0 the +omega solve would sit on the discrete eigenvalue;
  // a tiny symmetric offset cancels the ground-state term and costs O(omega^2)
  const double omega = (w == 0.0 ? 1e-6 : w) * omega_b;
  const double e_plus = -omega_b + omega;
  const double kin = e_plus > 0.0 ? std::sqrt(2.0 * e_plus) : 0.0;
  const GridSpec grid = opt.grid ? *opt.grid : make_grid(v, kappa, opt.box_factor, kin);
  if (opt.grid) validate_grid(grid, v, kappa, opt.box_factor);

  auto evaluate = [&](const GridSpec& g) {
    const cd coarse = grid_alpha_once(omega, g, v, opt.absorbing);
    if (!opt.richardson) return std::pair{coarse, 0.0};
    const cd fine = grid_alpha_once(omega, g.refined(2), v, opt.absorbing);
    const cd ex = (4.0 * fine - coarse) / 3.0;
    return std::pair{ex, std::abs(ex - fine)};
  };
  auto [value, err] = evaluate(grid);

  PolarizabilityPoint pt;
  pt.omega_over_omegaB = w;
  pt.regime = w < 1.0 ? FrequencyRegime::below : FrequencyRegime::above;
  pt.method = Method::grid;
  pt.error_estimate = err * s.atomic_units_factor();
  if (opt.check_box) {
    const cd wide = evaluate(grid.enlarged(2.0)).first;
    const double shift = std::abs(wide - value) / std::abs(value);
    if (shift > opt.tolerance)
      pt.warnings.push_back("boundary reflection: doubling the box shifts alpha by " + std::to_string(shift));
  }
  pt.value = value * s.atomic_units_factor();
  return pt;
}

StaticSum alpha_static_sum(const ScaledParams& s, const DeltaPotential& v, const BoxOptions& opt) {
  const double kappa = ground_kappa(v);
  const bool parity = opt.parity_reduction && v.is_symmetric();
  auto evaluate = [&](double box_factor, bool keep) {
    const GridSpec grid = make_grid(v, kappa, box_factor);
    if (!opt.richardson) return box_sum_once(grid, v, parity, keep);
    const auto coarse = box_sum_once(grid, v, parity, false);
    return richardson(coarse, box_sum_once(grid.refined(2), v, parity, keep));
  };
  const SumParts parts = evaluate(opt.box_factor, opt.keep_states);

  StaticSum out;
  const double f = s.atomic_units_factor();
  out.total = parts.total * f;
  out.bound_part = parts.bound * f;
  out.continuum_part = parts.continuum * f;
  out.trk_sum = parts.trk;
  out.states = parts.states;
  out.energies = parts.energies;
  out.elements = parts.elements;
  if (opt.check_box) {
    const double wide = evaluate(2.0 * opt.box_factor, false).total * f;
    out.box_shift = std::abs(wide - out.total) / std::abs(out.total);
    if (out.box_shift > opt.tolerance)
      out.warnings.push_back("box sum not converged: doubling the box shifts the total by " +
                             std::to_string(out.box_shift));
  }
  return out;
}

std::vector<double> grid_bound_kappas(const DeltaPotential& v, double box_factor) {
  // the combined-strength single well bounds every decay constant from above
  const double k_max = v.total_strength();
  double k_min = k_max;
  auto levels = [&](const GridSpec& g) {
    const auto ham = grid_hamiltonian(g, v);
    const auto [lo, hi] = gershgorin_bounds(ham.diag, ham.off);
    (void)hi;
    const std::size_t count = sturm_count(ham.diag, ham.off, 0.0);
    std::vector<double> ks;
    for (std::size_t i = 0; i < count; ++i)
      ks.push_back(std::sqrt(-2.0 * sturm_eigenvalue(ham.diag, ham.off, i, lo, 0.0)));
    return ks;
  };
  // Free ends lower every level, so this count bounds the open-line count from
  // above while the walled box bounds it from below.
  auto free_end_count = [&](const GridSpec& g) {
    auto ham = grid_hamiltonian(g, v);
    const double half = 0.5 / (ham.h * ham.h);
    ham.diag(0) -= half;
    ham.diag(ham.diag.size() - 1) -= half;
    return sturm_count(ham.diag, ham.off, 0.0);
  };
  for (int attempt = 0; attempt < 16; ++attempt) {
    const GridSpec grid = make_grid(v, k_max, box_factor * k_max / k_min);
    const auto coarse = levels(grid);
    const auto fine = levels(grid.refined(2));
    if (coarse.empty() || fine.empty()) throw ConvergenceError("grid_bound_kappas: no bound state on the grid");
    const double weakest = fine.back();
    const bool complete = free_end_count(grid) == coarse.size();
    if (complete && coarse.size() == fine.size() && weakest >= 0.999 * k_min) {
      std::vector<double> out(fine.size());
      for (std::size_t i = 0; i < fine.size(); ++i) out[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
      return out;
    }
    k_min = complete ? std::min(k_min, weakest) : 0.25 * std::min(k_min, weakest);
  }
  throw ConvergenceError("grid_bound_kappas: box did not settle");
}

}  // namespace ddpol
