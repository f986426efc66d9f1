#include "omm/gaussian.hpp"

#include "omm/errors.hpp"
#include "omm/layout.hpp"
#include "omm/stability.hpp"

#include <algorithm>
#include <complex>
#include <cmath>
#include <sstream>

namespace omm {
namespace {

using MatrixL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

void require_square_finite(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::WrongShape, std::string(what) + " must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::WrongShape, std::string(what) + " has non-finite entries");
  }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Kronecker form of X -> A X + X A^T acting on column-major vec(X).
MatrixL sylvester_operator(const MatrixL& a) {
  const Eigen::Index n = a.rows();
  MatrixL k = MatrixL::Zero(n * n, n * n);
  for (Eigen::Index col = 0; col < n; ++col) {
    // I (x) A: block (col, col) = A
    k.block(col * n, col * n, n, n) += a;
    // A (x) I: block (col, j) = a(col, j) * I
    for (Eigen::Index j = 0; j < n; ++j) {
      const long double s = a(col, j);
      if (s == 0.0L) continue;
      for (Eigen::Index i = 0; i < n; ++i) k(col * n + i, j * n + i) += s;
    }
  }
  return k;
}

}  // namespace

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, max_abs(m));
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

DriftMatrix make_drift(Eigen::MatrixXd m) {
  require_square_finite(m, "drift matrix");
  return DriftMatrix(std::move(m));
}

DiffusionMatrix make_diffusion(Eigen::MatrixXd m) {
  require_square_finite(m, "diffusion matrix");
  if (!is_symmetric(m, 1e-12)) throw Error(ErrorCode::NotSymmetric, "diffusion matrix");
  if ((m.diagonal().array() < 0.0).any()) {
    throw Error(ErrorCode::InvalidParameter, "diffusion matrix has a negative diagonal entry");
  }
  return DiffusionMatrix(std::move(m));
}

CovarianceMatrix solve_lyapunov_algebraic(const DriftMatrix& drift,
                                          const DiffusionMatrix& diffusion) {
  const Eigen::MatrixXd& a = drift.matrix();
  const Eigen::MatrixXd& d = diffusion.matrix();
  require_square_finite(a, "drift matrix");
  require_square_finite(d, "diffusion matrix");
  if (a.rows() != d.rows()) {
    throw Error(ErrorCode::WrongShape, "drift and diffusion dimensions differ");
  }
  const Eigen::Index n = a.rows();

  // V is invariant under a common rescaling of drift and diffusion.
  const double scale = max_abs(a) > 0.0 ? max_abs(a) : 1.0;
  const MatrixL as = a.cast<long double>() / static_cast<long double>(scale);
  const MatrixL ds = d.cast<long double>() / static_cast<long double>(scale);

  const MatrixL k = sylvester_operator(as);
  VectorL rhs(n * n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) rhs(j * n + i) = -ds(i, j);

  Eigen::PartialPivLU<MatrixL> lu(k);
  // rcond() misses exact zero pivots, so check the pivot spread as well.
  const auto pivots = lu.matrixLU().diagonal().cwiseAbs();
  const long double rcond = std::min(lu.rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (!(rcond > 1e-14L)) {
    std::ostringstream msg;
    msg << "Sylvester operator is singular (rcond " << static_cast<double>(rcond)
        << "); drift has eigenvalues summing to ~0";
    throw Error(ErrorCode::SingularSystem, msg.str());
  }
  VectorL x = lu.solve(rhs);
  for (int pass = 0; pass < 2; ++pass) {
    const VectorL r = rhs - k * x;
    x += lu.solve(r);
  }

  Eigen::MatrixXd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) v(i, j) = static_cast<double>(x(j * n + i));
  if (!v.allFinite()) throw Error(ErrorCode::NumericalFailure, "Lyapunov solution not finite");
  v = 0.5 * (v + v.transpose()).eval();
  return CovarianceMatrix(std::move(v));
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion) {
  const StabilityReport report = is_stable(drift);
  if (!report.stable) {
    std::ostringstream msg;
    msg << "drift is not Hurwitz (spectral abscissa " << report.spectral_abscissa << ")";
    throw Error(ErrorCode::NotStable, msg.str());
  }
  CovarianceMatrix v = solve_lyapunov_algebraic(drift, diffusion);
  const double residual = lyapunov_residual(drift, diffusion, v);
  if (!(residual <= 1e-10)) {
    std::ostringstream msg;
    msg << "Lyapunov residual " << residual << " exceeds 1e-10";
    throw Error(ErrorCode::NumericalFailure, msg.str());
  }
  return v;
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                                LyapunovPolicy policy) {
  return policy == LyapunovPolicy::strict ? solve_lyapunov(drift, diffusion)
                                          : solve_lyapunov_algebraic(drift, diffusion);
}

double lyapunov_residual(const DriftMatrix& drift, const DiffusionMatrix& diffusion,
                         const CovarianceMatrix& cov) {
  const Eigen::MatrixXd& a = drift.matrix();
  const Eigen::MatrixXd& v = cov.matrix();
  const Eigen::MatrixXd r = a * v + v * a.transpose() + diffusion.matrix();
  return r.norm() / std::max(1.0, diffusion.matrix().norm());
}

double uncertainty_margin(const Eigen::MatrixXd& cm) {
  if (cm.rows() != cm.cols()) throw Error(ErrorCode::WrongShape, "matrix must be square");
  if (cm.rows() % 2 != 0) throw Error(ErrorCode::OddDimension, "dimension must be even");
  if (!cm.allFinite()) throw Error(ErrorCode::WrongShape, "non-finite entries");
  if (!is_symmetric(cm)) throw Error(ErrorCode::NotSymmetric, "covariance must be symmetric");
  const int modes = static_cast<int>(cm.rows() / 2);
  Eigen::MatrixXcd h = cm.cast<std::complex<double>>();
  h += std::complex<double>(0.0, 0.5) * symplectic_form(modes).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigensolver failed on V + i*Omega/2");
  }
  return solver.eigenvalues().minCoeff();
}

bool is_physical_covariance(const Eigen::MatrixXd& cm, double tol) {
  return uncertainty_margin(cm) >= -tol;
}

std::vector<double> symplectic_eigenvalues(const Eigen::MatrixXd& cm) {
  if (cm.rows() != cm.cols()) throw Error(ErrorCode::WrongShape, "matrix must be square");
  if (cm.rows() % 2 != 0) throw Error(ErrorCode::OddDimension, "dimension must be even");
  if (!cm.allFinite()) throw Error(ErrorCode::WrongShape, "non-finite entries");
  if (!is_symmetric(cm)) throw Error(ErrorCode::NotSymmetric, "covariance must be symmetric");

  const int modes = static_cast<int>(cm.rows() / 2);
  const Eigen::MatrixXd m = symplectic_form(modes) * cm;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigensolver failed on Omega*V");
  }
  // |eig(i*Omega*V)| = |eig(Omega*V)|; they come in +-nu pairs.
  std::vector<double> moduli;
  moduli.reserve(cm.rows());
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    moduli.push_back(std::abs(solver.eigenvalues()(k)));
  }
  std::sort(moduli.begin(), moduli.end());

  std::vector<double> nu;
  nu.reserve(modes);
  const double floor = 1e-300;
  for (int k = 0; k < modes; ++k) {
    const double a = moduli[2 * k];
    const double b = moduli[2 * k + 1];
    if (std::abs(a - b) > 1e-9 * std::max({a, b, floor}) && std::abs(a - b) > 1e-14) {
      throw Error(ErrorCode::NumericalFailure, "symplectic spectrum does not pair as +-nu");
    }
    nu.push_back(0.5 * (a + b));
  }
  return nu;
}

Eigen::Matrix4d partial_transpose(const Eigen::MatrixXd& cm) {
  if (cm.rows() != 4 || cm.cols() != 4) {
    throw Error(ErrorCode::WrongShape, "partial transpose expects a 4x4 covariance");
  }
  if (!is_symmetric(cm)) throw Error(ErrorCode::NotSymmetric, "covariance must be symmetric");
  const Eigen::Vector4d p(1.0, 1.0, 1.0, -1.0);
  return p.asDiagonal() * cm * p.asDiagonal();
}

}  // namespace omm
