#include "omm/stability.hpp"

#include "omm/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>

namespace omm {
namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

template <class T>
using Poly = std::vector<T>;

template <class T>
using Square = std::vector<std::vector<T>>;

template <class T>
T abs_of(const T& x) {
  using std::fabs;
  using boost::multiprecision::fabs;
  return fabs(x);
}

// In-place Householder reduction to upper Hessenberg form.
template <class T>
void to_hessenberg(Square<T>& h) {
  const std::size_t n = h.size();
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::vector<T> v(n, T(0));
    T alpha2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = h[i][k];
      alpha2 += v[i] * v[i];
    }
    if (alpha2 == 0) continue;
    using std::sqrt;
    using boost::multiprecision::sqrt;
    const T alpha = sqrt(alpha2);
    v[k + 1] += v[k + 1] >= 0 ? alpha : T(-alpha);
    T vnorm2 = 0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0) continue;
    const T f = T(2) / vnorm2;
    // H <- (I - f vv^T) H (I - f vv^T)
    for (std::size_t j = 0; j < n; ++j) {
      T w = 0;
      for (std::size_t i = k + 1; i < n; ++i) w += v[i] * h[i][j];
      w *= f;
      for (std::size_t i = k + 1; i < n; ++i) h[i][j] -= v[i] * w;
    }
    for (std::size_t i = 0; i < n; ++i) {
      T w = 0;
      for (std::size_t j = k + 1; j < n; ++j) w += h[i][j] * v[j];
      w *= f;
      for (std::size_t j = k + 1; j < n; ++j) h[i][j] -= w * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) h[i][k] = 0;
  }
}

template <class T>
Poly<T> charpoly(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::WrongShape, "matrix must be square");
  const std::size_t n = static_cast<std::size_t>(m.rows());
  Square<T> h(n, std::vector<T>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h[i][j] = T(m(i, j));
  to_hessenberg(h);

  // p[k] = det(x I - H[0:k, 0:k]); Hessenberg determinant recurrence.
  std::vector<Poly<T>> p;
  p.reserve(n + 1);
  p.push_back(Poly<T>{T(1)});
  for (std::size_t k = 1; k <= n; ++k) {
    const Poly<T>& prev = p[k - 1];
    Poly<T> next(prev.size() + 1, T(0));
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i + 1] += prev[i];
      next[i] -= h[k - 1][k - 1] * prev[i];
    }
    T sub = 1;
    for (std::size_t i = k - 1; i >= 1; --i) {
      sub *= h[i][i - 1];
      const T coeff = h[i - 1][k - 1] * sub;
      if (coeff != 0) {
        const Poly<T>& lower = p[i - 1];
        for (std::size_t d = 0; d < lower.size(); ++d) next[d] -= coeff * lower[d];
      }
    }
    p.push_back(std::move(next));
  }
  return p.back();
}

template <class T>
RouthReport routh(const Poly<T>& ascending, const T& eps) {
  if (ascending.empty() || ascending.back() == 0) {
    throw Error(ErrorCode::InvalidParameter, "polynomial must have a non-zero leading coefficient");
  }
  const std::size_t degree = ascending.size() - 1;
  // Descending, normalised to a positive leading coefficient.
  Poly<T> a(ascending.rbegin(), ascending.rend());
  const T lead = a.front();
  for (auto& c : a) c /= lead;

  const std::size_t width = degree / 2 + 1;
  Poly<T> prev(width, T(0)), cur(width, T(0));
  for (std::size_t j = 0; j < width; ++j) {
    if (2 * j <= degree) prev[j] = a[2 * j];
    if (2 * j + 1 <= degree) cur[j] = a[2 * j + 1];
  }

  std::vector<T> column{prev[0]};
  RouthReport report;
  auto row_scale = [](const Poly<T>& r) {
    T s = 0;
    for (const T& v : r) s = std::max(s, abs_of(v));
    return s;
  };

  if (degree > 0) {
    column.push_back(cur[0]);
    for (std::size_t row = 2; row <= degree; ++row) {
      const T scale = std::max(row_scale(prev), row_scale(cur));
      if (abs_of(cur[0]) <= eps * scale) {
        report.zero_pivot = true;
        break;
      }
      Poly<T> next(width, T(0));
      for (std::size_t j = 0; j + 1 < width; ++j) {
        next[j] = (cur[0] * prev[j + 1] - prev[0] * cur[j + 1]) / cur[0];
      }
      column.push_back(next[0]);
      prev = std::move(cur);
      cur = std::move(next);
    }
    if (!report.zero_pivot) {
      const T scale = std::max(row_scale(prev), abs_of(column.back()));
      if (abs_of(column.back()) <= eps * scale) report.zero_pivot = true;
    }
  }

  for (std::size_t i = 1; i < column.size(); ++i) {
    if ((column[i] > 0) != (column[i - 1] > 0)) ++report.sign_changes;
  }
  for (const T& c : column) report.first_column.push_back(static_cast<long double>(c));
  report.stable = !report.zero_pivot && report.sign_changes == 0 && column.size() == degree + 1;
  return report;
}

}  // namespace

StabilityReport is_stable(const DriftMatrix& drift) {
  const Eigen::MatrixXd& a = drift.matrix();
  if (a.rows() != a.cols() || !a.allFinite()) {
    throw Error(ErrorCode::WrongShape, "drift must be square and finite");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "eigensolver did not converge");
  }
  StabilityReport report;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
  report.spectral_abscissa = -INFINITY;
  for (const auto& lambda : report.eigenvalues) {
    report.spectral_abscissa = std::max(report.spectral_abscissa, lambda.real());
  }
  const double scale = a.size() ? std::max(1.0, a.cwiseAbs().maxCoeff()) : 1.0;
  report.stable = report.spectral_abscissa < -1e-12 * scale;
  return report;
}

std::vector<long double> characteristic_polynomial(const Eigen::MatrixXd& m) {
  const Poly<Wide> p = charpoly<Wide>(m);
  std::vector<long double> out;
  out.reserve(p.size());
  for (const Wide& c : p) out.push_back(static_cast<long double>(c));
  return out;
}

RouthReport routh_hurwitz(const std::vector<long double>& ascending) {
  return routh(ascending, 64.0L * LDBL_EPSILON);
}

RouthReport routh_hurwitz(const DriftMatrix& drift) {
  const Eigen::MatrixXd& a = drift.matrix();
  const double scale = a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
  const Eigen::MatrixXd normalised = scale > 0.0 ? Eigen::MatrixXd(a / scale) : a;
  return routh(charpoly<Wide>(normalised), Wide(std::numeric_limits<Wide>::epsilon() * 1024));
}

}  // namespace omm
