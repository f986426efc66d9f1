#pragma once

#include "omm/gaussian.hpp"

#include <complex>
#include <vector>

namespace omm {

struct StabilityReport {
  bool stable = false;
  /// Largest real part over the drift spectrum (rad/s when the drift is).
  double spectral_abscissa = 0.0;
  std::vector<std::complex<double>> eigenvalues;
};

/// Eigenvalue test: stable iff every Re(lambda) < -tol, where
/// tol = 1e-12 * max(1, max|drift_ij|). Marginal cases count as unstable.
/// Throws NumericalFailure if the eigensolver does not converge.
StabilityReport is_stable(const DriftMatrix& drift);

/// Monic characteristic polynomial det(x*I - m) in ascending order
/// (coefficient of x^k at index k), computed by Householder reduction to
/// Hessenberg form and the Hessenberg determinant recurrence in 50-digit
/// arithmetic, rounded to long double.
std::vector<long double> characteristic_polynomial(const Eigen::MatrixXd& m);

struct RouthReport {
  bool stable = false;
  /// Sign changes in the first column; equals the number of right-half-plane
  /// roots when no zero pivot occurs.
  int sign_changes = 0;
  bool zero_pivot = false;
  std::vector<long double> first_column;
};

/// Routh-Hurwitz array on the characteristic polynomial of drift/s, with
/// s = max|drift_ij| so the test is scale free. Polynomial and array are
/// carried in 50-digit arithmetic, so lightly damped spectra resolve.
RouthReport routh_hurwitz(const DriftMatrix& drift);

/// Routh array of an arbitrary real polynomial (ascending coefficients,
/// leading coefficient non-zero).
RouthReport routh_hurwitz(const std::vector<long double>& ascending);

}  // namespace omm
