#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace omm {

/// Square real matrix tagged with its role. Construction validates shape and
/// finiteness; role-specific invariants are checked by the factory helpers.
template <class Tag>
class TaggedMatrix {
 public:
  TaggedMatrix() = default;
  explicit TaggedMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}

  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  Eigen::MatrixXd m_;
};

using DriftMatrix = TaggedMatrix<struct DriftTag>;
using DiffusionMatrix = TaggedMatrix<struct DiffusionTag>;
using CovarianceMatrix = TaggedMatrix<struct CovarianceTag>;

/// Throws WrongShape unless square and finite.
DriftMatrix make_drift(Eigen::MatrixXd m);
/// Throws WrongShape/NotSymmetric/InvalidParameter: must be square, finite,
/// symmetric, with non-negative diagonal.
DiffusionMatrix make_diffusion(Eigen::MatrixXd m);

enum class LyapunovPolicy {
  /// Refuse non-Hurwitz drift (NotStable).
  strict,
  /// Return the unique algebraic solution whenever the Sylvester operator is
  /// nonsingular, i.e. no two eigenvalues of the drift sum to zero.
  algebraic,
};

/// Steady-state covariance V solving drift*V + V*drift^T + diffusion = 0.
/// Throws NotStable if the drift is not Hurwitz, SingularSystem if the
/// vectorized system is numerically singular.
CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion);

CovarianceMatrix solve_lyapunov_algebraic(const DriftMatrix& drift,
                                          const DiffusionMatrix& diffusion);

CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                LyapunovPolicy policy);

/// ||drift*V + V*drift^T + diffusion||_F / max(1, ||diffusion||_F).
double lyapunov_residual(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                         const CovarianceMatrix& cov);

/// Symplectic eigenvalues of a 2n x 2n symmetric matrix, ascending.
/// Throws OddDimension, NotSymmetric; NumericalFailure if the +-nu pairing
/// of the spectrum of i*Omega*cm breaks down.
std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cm);

/// P * cm * P with P = diag(1, 1, 1, -1). Throws WrongShape, NotSymmetric.
Eigen::Matrix4d partial_transpose(const Eigen::MatrixXd& cm);

/// Smallest eigenvalue of the Hermitian matrix cm + i*Omega/2; a state is
/// physical iff this is >= 0. Throws OddDimension, NotSymmetric.
double uncertainty_margin(const Eigen::MatrixXd& cm);

/// uncertainty_margin(cm) >= -tol.
bool is_physical_covariance(const Eigen::MatrixXd& cm, double tol = 1e-9);

/// True if |a_ij - a_ji| <= tol * max(1, max|a|).
bool is_symmetric(const Eigen::MatrixXd& m, double tol = 1e-9);

}  // namespace omm
