#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ddpol/bound_states.hpp"
#include "ddpol/polarizability.hpp"
#include "ddpol/potential.hpp"
#include "ddpol/quadrature.hpp"
#include "ddpol/units.hpp"

namespace ddpol {

/// Uniform finite-difference grid centred on `center` with an odd number of
/// nodes, so the centre is itself a node.
struct GridSpec {
  double box_half_length = 0.0;
  std::size_t points = 0;
  double center = 0.0;

  double spacing() const { return 2.0 * box_half_length / static_cast<double>(points - 1); }
  double node(std::size_t i) const { return center - box_half_length + spacing() * static_cast<double>(i); }
  /// Same box, spacing divided by `factor`.
  GridSpec refined(int factor) const;
  /// Same spacing, box enlarged by `factor` (rounded to whole nodes).
  GridSpec enlarged(double factor) const;
};

/// Grid that places every well on a node, with spacing <= min(0.1/kappa, b/20)
/// (b the smallest half gap or offset from the centre) and box >= box_factor/kappa
/// beyond the outermost well. `max_wavenumber` tightens the spacing for
/// oscillatory solutions.
GridSpec make_grid(const DeltaPotential& potential, double kappa, double box_factor = 30.0,
                   double max_wavenumber = 0.0);
/// Throws ConfigError if a well is off-node or the spacing/box invariants fail.
void validate_grid(const GridSpec& grid, const DeltaPotential& potential, double kappa, double box_factor = 30.0);

/// The discretised Hamiltonian -1/2 d^2/dx^2 - sum g_j delta(x - x_j) on a grid
/// with Dirichlet ends; the delta strength is divided by the spacing on its node.
struct GridHamiltonian {
  Eigen::VectorXd diag;
  Eigen::VectorXd off;  ///< constant -1/(2h^2)
  Eigen::VectorXd x;
  double h = 0.0;
};
GridHamiltonian grid_hamiltonian(const GridSpec& grid, const DeltaPotential& potential);

/// Lowest eigenpair of the grid Hamiltonian, eigenvector normalised to sum psi^2 h = 1.
struct GridGroundState {
  double energy = 0.0;
  Eigen::VectorXd psi;
};
GridGroundState grid_ground_state(const GridHamiltonian& ham);

struct GridOptions {
  std::optional<GridSpec> grid;  ///< default: make_grid with the settings below
  double box_factor = 30.0;
  bool richardson = true;        ///< combine h and h/2 as (4 f(h/2) - f(h)) / 3
  /// Above threshold: replace the exact discrete outgoing-wave closure by a
  /// quadratic complex absorbing ramp in an extended Dirichlet box.
  bool absorbing = false;
  bool check_box = false;        ///< re-run in a doubled box and warn on drift
  double tolerance = 1e-4;
};

/// alpha(omega) in atomic units from alpha = -<x Psi0|(psi_+ + psi_-)>, where
/// (E0 +- omega - H) psi_+- = x Psi0 is solved on a grid.
PolarizabilityPoint alpha_grid_inhomogeneous(double omega_over_omegaB, const ScaledParams& scaled,
                                             const DeltaPotential& potential, const GridOptions& options = {});

/// alpha(omega) in atomic units from k-space quadrature of the dipole
/// transform against the full resolvent (free part plus Dyson correction).
PolarizabilityPoint alpha_eq6_quadrature(double omega_over_omegaB, const ScaledParams& scaled,
                                         const DeltaPotential& potential, const QuadratureSpec& spec = {});

struct BoxOptions {
  double box_factor = 40.0;
  bool richardson = true;
  /// For mirror-symmetric potentials diagonalise only the odd sector (even
  /// states carry zero dipole element with the even ground state).
  bool parity_reduction = true;
  bool check_box = false;
  double tolerance = 1e-4;
  bool keep_states = false;  ///< fill StaticSum::energies / elements
};

/// Sum over box states of 2 |<n|x|0>|^2 / (E_n - E0), atomic units.
struct StaticSum {
  double total = 0.0;
  double bound_part = 0.0;      ///< excited states with E_n < 0
  double continuum_part = 0.0;  ///< box-discretised continuum
  double trk_sum = 0.0;         ///< sum 2 (E_n - E0) |<n|x|0>|^2, ideally 1
  std::size_t states = 0;
  double box_shift = 0.0;       ///< relative change on box doubling, if checked
  std::vector<std::string> warnings;
  Eigen::VectorXd energies;     ///< excited-state energies (finest grid)
  Eigen::VectorXd elements;     ///< <n|x - <x>|0> for those states
};
StaticSum alpha_static_sum(const ScaledParams& scaled, const DeltaPotential& potential, const BoxOptions& options = {});

/// Bound-state decay constants of the grid Hamiltonian (Dirichlet box of
/// box_factor / kappa_min), Richardson-extrapolated, ascending in energy.
std::vector<double> grid_bound_kappas(const DeltaPotential& potential, double box_factor = 30.0);

}  // namespace ddpol
