#pragma once

#include "omm/model.hpp"

#include <Eigen/Dense>

#include <random>
#include <vector>

namespace omm::testing {

struct MomentIntegration {
  Eigen::MatrixXd covariance;
  double time = 0.0;
  long steps = 0;
  bool converged = false;
};

/// RK4 integration of dV/dt = A V + V A^T + D from V(0) = 0 until
/// ||dV/dt||_F < tol * max(1, ||D||_F) or max_steps is reached.
MomentIntegration integrate_moments(const Eigen::MatrixXd& a, const Eigen::MatrixXd& d,
                                    double tol = 1e-12, long max_steps = 20'000'000);

/// Hurwitz classification from the characteristic polynomial (Faddeev-LeVerrier)
/// and the Routh first column, both in exact rational arithmetic on the
/// binary values of `a`.
struct ExactRouth {
  bool stable = false;
  int sign_changes = 0;
  bool zero_pivot = false;
};
ExactRouth exact_routh(const Eigen::MatrixXd& a);

/// Random effective parameters in dimensionless units (rates of order 1).
EffectiveParams random_effective(std::mt19937_64& rng, double coupling_scale = 0.4);

/// Covariance of a two-mode squeezed vacuum with squeezing r.
Eigen::Matrix4d two_mode_squeezed(double r);

/// Random physical n-mode covariance: S diag(nu) S^T with random symplectic S.
Eigen::MatrixXd random_physical_state(std::mt19937_64& rng, int modes);

}  // namespace omm::testing
