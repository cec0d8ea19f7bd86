#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>

#include "ddpol/errors.hpp"

namespace ddpol {

template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Solves a general tridiagonal system by Gaussian elimination with partial
/// pivoting (the LAPACK gtsv scheme). `lower[i]` = A(i+1, i), `upper[i]` = A(i, i+1).
template <class Scalar>
Vec<Scalar> solve_tridiagonal(Vec<Scalar> lower, Vec<Scalar> diag, Vec<Scalar> upper, Vec<Scalar> b) {
  using std::abs;
  const Eigen::Index n = diag.size();
  if (n == 0) return b;
  Vec<Scalar> du2 = Vec<Scalar>::Zero(n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (abs(diag[i]) >= abs(lower[i])) {
      if (diag[i] == Scalar(0)) throw ConvergenceError("solve_tridiagonal: singular matrix");
      const Scalar fact = lower[i] / diag[i];
      diag[i + 1] -= fact * upper[i];
      b[i + 1] -= fact * b[i];
    } else {
      const Scalar fact = diag[i] / lower[i];
      diag[i] = lower[i];
      const Scalar temp = diag[i + 1];
      diag[i + 1] = upper[i] - fact * temp;
      if (i + 2 < n) {
        du2[i] = upper[i + 1];
        upper[i + 1] = -fact * du2[i];
      }
      upper[i] = temp;
      const Scalar tb = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tb - fact * b[i + 1];
    }
  }
  if (diag[n - 1] == Scalar(0)) throw ConvergenceError("solve_tridiagonal: singular matrix");
  b[n - 1] /= diag[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - upper[n - 2] * b[n - 1]) / diag[n - 2];
  for (Eigen::Index i = n - 3; i >= 0; --i) b[i] = (b[i] - upper[i] * b[i + 1] - du2[i] * b[i + 2]) / diag[i];
  return b;
}

/// Number of eigenvalues below sigma of the symmetric tridiagonal matrix with
/// diagonal `diag` and off-diagonal `off`.
std::size_t sturm_count(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double sigma);

/// The index-th smallest eigenvalue (0-based), bisected inside [lo, hi].
double sturm_eigenvalue(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, std::size_t index, double lo,
                        double hi);

/// Gershgorin interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const Eigen::VectorXd& diag, const Eigen::VectorXd& off);

/// Unit-2-norm eigenvector for a (converged) eigenvalue, by inverse iteration.
Eigen::VectorXd inverse_iteration(const Eigen::VectorXd& diag, const Eigen::VectorXd& off, double lambda,
                                  int iterations = 3);

}  // namespace ddpol
