#include "ddpol/bound_states.hpp"

#include <algorithm>
#include <cmath>

#include "ddpol/errors.hpp"

namespace ddpol {

double BoundState::operator()(double x) const {
  double s = 0.0;
  for (Eigen::Index j = 0; j < centers.size(); ++j)
    s += coefficients[j] * std::exp(-kappa * std::abs(x - centers[j]));
  return s;
}

double BoundState::derivative(double x, int side) const {
  double s = 0.0;
  for (Eigen::Index j = 0; j < centers.size(); ++j) {
    const double d = x - centers[j];
    double sgn = d > 0 ? 1.0 : (d < 0 ? -1.0 : (side > 0 ? 1.0 : -1.0));
    s += -kappa * sgn * coefficients[j] * std::exp(-kappa * std::abs(d));
  }
  return s;
}

namespace {

// Integrals of products of orbitals e_i = exp(-k|x - x_i|):
//   int e_i e_j      = exp(-k d) (d + 1/k)
//   int x e_i e_j    = (x_i + x_j)/2 * exp(-k d) (d + 1/k)
double overlap(double k, double d) { return std::exp(-k * d) * (d + 1.0 / k); }

}  // namespace

double BoundState::norm_squared() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < centers.size(); ++i)
    for (Eigen::Index j = 0; j < centers.size(); ++j)
      s += coefficients[i] * coefficients[j] * overlap(kappa, std::abs(centers[i] - centers[j]));
  return s;
}

double BoundState::mean_position() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < centers.size(); ++i)
    for (Eigen::Index j = 0; j < centers.size(); ++j)
      s += coefficients[i] * coefficients[j] * 0.5 * (centers[i] + centers[j]) *
           overlap(kappa, std::abs(centers[i] - centers[j]));
  return s / norm_squared();
}

double solve_even_kappa(double p, double a) { return even_root(p) / a; }

std::optional<double> solve_odd_kappa(double p, double a) {
  auto v = odd_root(p);
  if (!v) return std::nullopt;
  return *v / a;
}

double ground_norm(double k0, double a) {
  return std::sqrt(2.0 * k0 / (std::exp(2.0 * k0 * a) + 2.0 * k0 * a + 1.0));
}

double ground_wavefunction(double x, double k0, double a) {
  const double n = ground_norm(k0, a);
  const double ax = std::abs(x);
  if (ax < a) return n * std::cosh(k0 * x);
  return n * std::cosh(k0 * a) * std::exp(-k0 * (ax - a));
}

BoundState ground_state(double p, double a) {
  BoundState s;
  s.parity = Parity::even;
  s.kappa = solve_even_kappa(p, a);
  s.energy = -0.5 * s.kappa * s.kappa;
  s.norm = ground_norm(s.kappa, a);
  s.centers = Eigen::Vector2d(-a, a);
  const double c = 0.5 * (*s.norm) * std::exp(s.kappa * a);
  s.coefficients = Eigen::Vector2d(c, c);
  return s;
}

BoundState ground_state(const ScaledParams& scaled) { return ground_state(scaled.p, scaled.a); }

std::optional<BoundState> odd_state(double p, double a) {
  auto k1 = solve_odd_kappa(p, a);
  if (!k1) return std::nullopt;
  BoundState s;
  s.parity = Parity::odd;
  s.kappa = *k1;
  s.energy = -0.5 * s.kappa * s.kappa;
  s.centers = Eigen::Vector2d(-a, a);
  s.coefficients = Eigen::Vector2d(-1.0, 1.0);
  s.coefficients /= std::sqrt(s.norm_squared());
  return s;
}

namespace {

// Symmetrised Birman-Schwinger matrix sqrt(g) E(kappa) sqrt(g) / kappa. Its
// eigenvalues decrease monotonically in kappa; bound states sit where one of
// them crosses 1.
Eigen::MatrixXd birman_schwinger(const DeltaPotential& v, double kappa) {
  const auto n = static_cast<Eigen::Index>(v.size());
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index l = 0; l < n; ++l)
    for (Eigen::Index j = 0; j < n; ++j)
      s(l, j) = std::sqrt(v[l].strength * v[j].strength) *
                std::exp(-kappa * std::abs(v[l].position - v[j].position)) / kappa;
  return s;
}

// Eigenvalues in descending order.
Eigen::VectorXd bs_eigenvalues(const DeltaPotential& v, double kappa) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(birman_schwinger(v, kappa), Eigen::EigenvaluesOnly);
  return es.eigenvalues().reverse();
}

Parity detect_parity(const DeltaPotential& v, const Eigen::VectorXd& c) {
  if (!v.is_symmetric()) return Parity::none;
  const Eigen::VectorXd r = c.reverse();
  const double scale = c.cwiseAbs().maxCoeff();
  if ((c - r).cwiseAbs().maxCoeff() < 1e-8 * scale) return Parity::even;
  if ((c + r).cwiseAbs().maxCoeff() < 1e-8 * scale) return Parity::odd;
  return Parity::none;
}

}  // namespace

Spectrum multi_delta_spectrum(const DeltaPotential& potential) {
  const double kmax = potential.total_strength();
  const double kmin = 1e-9 * kmax;
  const Eigen::VectorXd lam0 = bs_eigenvalues(potential, kmin);
  const auto count = static_cast<Eigen::Index>((lam0.array() > 1.0).count());
  if (count == 0) throw ConvergenceError("multi_delta_spectrum: failed to bracket the ground state");

  Spectrum out;
  const auto n = static_cast<Eigen::Index>(potential.size());
  for (Eigen::Index i = 0; i < count; ++i) {
    auto f = [&](double k) { return bs_eigenvalues(potential, k)[i] - 1.0; };
    const double kappa = bracketed_root<double>(f, kmin, kmax, 1e-15 * kmax, 2000);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(birman_schwinger(potential, kappa));
    const Eigen::VectorXd phi = es.eigenvectors().col(n - 1 - i);

    BoundState s;
    s.kappa = kappa;
    s.energy = -0.5 * kappa * kappa;
    s.centers.resize(n);
    s.coefficients.resize(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      s.centers[j] = potential[j].position;
      s.coefficients[j] = std::sqrt(potential[j].strength) * phi[j] / kappa;
    }
    Eigen::Index imax;
    s.coefficients.cwiseAbs().maxCoeff(&imax);
    if (i == 0) {
      if (s.coefficients.sum() < 0) s.coefficients = -s.coefficients;
    } else if (s.coefficients[imax] < 0) {
      s.coefficients = -s.coefficients;
    }
    s.coefficients /= std::sqrt(s.norm_squared());
    s.parity = detect_parity(potential, s.coefficients);
    out.states.push_back(std::move(s));
  }
  for (std::size_t i = 1; i < out.states.size(); ++i) {
    const double k_prev = out.states[i - 1].kappa;
    if (std::abs(k_prev - out.states[i].kappa) < 1e-3 * k_prev) out.near_degenerate = true;
  }
  return out;
}

}  // namespace ddpol
