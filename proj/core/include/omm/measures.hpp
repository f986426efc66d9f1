#pragma once

#include "omm/gaussian.hpp"
#include "omm/layout.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace omm {

struct ModePair {
  Mode a = Mode::c;
  Mode b = Mode::m1;

  /// "c-m1"
  std::string label() const;
  /// "c_m1", for CSV column names.
  std::string column_label() const;
  bool operator==(const ModePair&) const = default;
};

/// Parses "c-m1"; nullopt on unknown or identical modes.
std::optional<ModePair> parse_pair(std::string_view text);

/// (c, m1), (c, m2), (m1, m2).
std::vector<ModePair> default_pairs();
/// All 10 unordered pairs in layout order.
std::vector<ModePair> all_mode_pairs();

/// Two-mode covariance [[A, C], [C^T, B]] with A the first mode of `pair`.
struct ReducedCovariance {
  ModePair pair;
  Eigen::Matrix4d cm;

  Eigen::Matrix2d A() const { return cm.topLeftCorner<2, 2>(); }
  Eigen::Matrix2d B() const { return cm.bottomRightCorner<2, 2>(); }
  Eigen::Matrix2d C() const { return cm.topRightCorner<2, 2>(); }
};

/// Throws SameMode for a == b, WrongShape unless v is 10x10.
ReducedCovariance reduce(const CovarianceMatrix& v, ModePair pair);

enum class Physicality {
  /// Reject reduced states violating the uncertainty principle.
  enforce,
  /// Evaluate the closed forms on any positive-determinant input.
  skip,
};

/// Smallest symplectic eigenvalue of the partially transposed state, from
/// chi = det A + det B - 2 det C:  eta = sqrt((chi - sqrt(chi^2 - 4 det)) / 2).
/// Radicands negative by < 1e-12 (relative) are clamped to 0; larger ones
/// throw ComplexEta. Under Physicality::enforce throws NonPhysicalInput when
/// r violates the uncertainty principle (r + i*Omega/2 not PSD to 1e-9).
double pt_min_symplectic(const ReducedCovariance& r, Physicality check = Physicality::enforce);

/// max(0, -ln(2 eta)); values below 1e-12 report as exactly 0.
double log_negativity(const ReducedCovariance& r, Physicality check = Physicality::enforce);

/// Same quantity through partial_transpose + symplectic_eigenvalues.
double log_negativity_symplectic(const ReducedCovariance& r,
                                 Physicality check = Physicality::enforce);

struct Steering {
  double a_to_b = 0.0;
  double b_to_a = 0.0;
  double asymmetry = 0.0;  ///< |a_to_b - b_to_a|
};

/// S_{A->B} = max(0, 1/2 ln(det A / (4 det V_R))) and symmetrically for B;
/// throws NonPositiveDeterminant for non-positive det A, det B or det V_R.
Steering gaussian_steering(const ReducedCovariance& r);

struct MeasureReport {
  ModePair pair;
  double log_negativity = 0.0;
  Steering steering;
};

MeasureReport measure_pair(const CovarianceMatrix& v, ModePair pair,
                           Physicality check = Physicality::enforce);

/// Reports for `pairs` (default_pairs() when empty).
std::vector<MeasureReport> all_pairs_report(const CovarianceMatrix& v,
                                            std::span<const ModePair> pairs = {},
                                            Physicality check = Physicality::enforce);

}  // namespace omm
