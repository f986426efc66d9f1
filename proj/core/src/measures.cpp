#include "omm/measures.hpp"

#include "omm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace omm {
namespace {

constexpr double kReportFloor = 1e-12;

double floor_small(double x) { return x < kReportFloor ? 0.0 : x; }

void require_physical(const ReducedCovariance& r, Physicality check) {
  if (!r.cm.allFinite()) throw Error(ErrorCode::NonPhysicalInput, "non-finite covariance");
  if (!(r.cm.determinant() > 0.0)) {
    throw Error(ErrorCode::NonPhysicalInput, "reduced covariance has non-positive determinant");
  }
  if (check == Physicality::skip) return;
  const double margin = uncertainty_margin(r.cm);
  if (margin < -1e-9) {
    std::ostringstream msg;
    msg << "reduced covariance " << r.pair.label()
        << " violates uncertainty (min eig of V + i*Omega/2 = " << margin << ")";
    throw Error(ErrorCode::NonPhysicalInput, msg.str());
  }
}

}  // namespace

std::string ModePair::label() const {
  return std::string(mode_name(a)) + "-" + std::string(mode_name(b));
}

std::string ModePair::column_label() const {
  return std::string(mode_name(a)) + "_" + std::string(mode_name(b));
}

std::optional<ModePair> parse_pair(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  const auto a = parse_mode(text.substr(0, dash));
  const auto b = parse_mode(text.substr(dash + 1));
  if (!a || !b || *a == *b) return std::nullopt;
  return ModePair{*a, *b};
}

std::vector<ModePair> default_pairs() {
  return {{Mode::c, Mode::m1}, {Mode::c, Mode::m2}, {Mode::m1, Mode::m2}};
}

std::vector<ModePair> all_mode_pairs() {
  std::vector<ModePair> out;
  for (int i = 0; i < kModeCount; ++i)
    for (int j = i + 1; j < kModeCount; ++j) out.push_back({kAllModes[i], kAllModes[j]});
  return out;
}

ReducedCovariance reduce(const CovarianceMatrix& v, ModePair pair) {
  if (pair.a == pair.b) throw Error(ErrorCode::SameMode, "reduce needs two distinct modes");
  if (v.dim() != kQuadratureCount || v.matrix().cols() != kQuadratureCount) {
    throw Error(ErrorCode::WrongShape, "expected a 10x10 covariance");
  }
  const std::array<int, 4> idx = {offset(pair.a), offset(pair.a) + 1, offset(pair.b),
                                  offset(pair.b) + 1};
  ReducedCovariance r{pair, Eigen::Matrix4d::Zero()};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r.cm(i, j) = v(idx[i], idx[j]);
  return r;
}

double pt_min_symplectic(const ReducedCovariance& r, Physicality check) {
  require_physical(r, check);
  const double alpha = r.A().determinant();
  const double beta = r.B().determinant();
  const double gamma = r.C().determinant();
  const double det = r.cm.determinant();
  const double chi = alpha + beta - 2.0 * gamma;
  double rad = chi * chi - 4.0 * det;
  if (rad < 0.0) {
    if (rad < -1e-12 * chi * chi) {
      throw Error(ErrorCode::ComplexEta, "chi^2 - 4 det < 0");
    }
    rad = 0.0;
  }
  const double eta2 = 0.5 * (chi - std::sqrt(rad));
  if (!(eta2 > 0.0)) throw Error(ErrorCode::NonPhysicalInput, "eta^2 <= 0");
  return std::sqrt(eta2);
}

double log_negativity(const ReducedCovariance& r, Physicality check) {
  const double eta = pt_min_symplectic(r, check);
  return floor_small(std::max(0.0, -std::log(2.0 * eta)));
}

double log_negativity_symplectic(const ReducedCovariance& r, Physicality check) {
  require_physical(r, check);
  const std::vector<double> nu = symplectic_eigenvalues(partial_transpose(r.cm));
  return floor_small(std::max(0.0, -std::log(2.0 * nu.front())));
}

Steering gaussian_steering(const ReducedCovariance& r) {
  const double alpha = r.A().determinant();
  const double beta = r.B().determinant();
  const double det = r.cm.determinant();
  if (!(alpha > 0.0 && beta > 0.0 && det > 0.0)) {
    throw Error(ErrorCode::NonPositiveDeterminant, "steering needs det A, det B, det V_R > 0");
  }
  Steering s;
  s.a_to_b = floor_small(std::max(0.0, 0.5 * std::log(alpha / (4.0 * det))));
  s.b_to_a = floor_small(std::max(0.0, 0.5 * std::log(beta / (4.0 * det))));
  s.asymmetry = std::abs(s.a_to_b - s.b_to_a);
  return s;
}

MeasureReport measure_pair(const CovarianceMatrix& v, ModePair pair, Physicality check) {
  const ReducedCovariance r = reduce(v, pair);
  return {pair, log_negativity(r, check), gaussian_steering(r)};
}

std::vector<MeasureReport> all_pairs_report(const CovarianceMatrix& v,
                                            std::span<const ModePair> pairs,
                                            Physicality check) {
  const std::vector<ModePair> fallback = default_pairs();
  if (pairs.empty()) pairs = fallback;
  std::vector<MeasureReport> out;
  out.reserve(pairs.size());
  for (const ModePair& p : pairs) out.push_back(measure_pair(v, p, check));
  return out;
}

}  // namespace omm
