#pragma once

#include "omm/config.hpp"
#include "omm/measures.hpp"
#include "omm/stability.hpp"
#include "omm/validity.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace omm {

/// Everything computed for one parameter point.
struct PointResult {
  EffectiveParams effective;
  StabilityReport stability;
  std::optional<CovarianceMatrix> covariance;
  double residual = 0.0;  ///< relative Lyapunov residual, NaN without covariance
  /// Covariance satisfies V + i*Omega/2 >= 0 (false without covariance).
  bool physical = false;
  /// One entry per requested pair, NaN-filled when unavailable.
  std::vector<MeasureReport> measures;
  /// Why covariance or measures are missing (empty on success).
  std::string failure;

  // Physical mode only.
  std::optional<SteadyState> steady_state;
  std::optional<DriveAmplitudes> drive;
  std::optional<ValidityReport> validity;
  bool phase_warning = false;

  bool has_measures() const { return failure.empty(); }
};

/// Effective parameters for a config: direct in effective mode, through
/// drive amplitudes and the mean-field steady state in physical mode.
EffectiveParams resolve_effective(const Config& config, std::optional<SteadyState>* steady = nullptr,
                                  std::optional<DriveAmplitudes>* drive = nullptr,
                                  bool* phase_warning = nullptr);

/// Kerr coefficient used by validity checks (rad/s).
double kerr_coefficient(const Config& config);

/// Builds drift and diffusion, classifies stability, solves the Lyapunov
/// equation under config.lyapunov and evaluates the pairs. The algebraic
/// policy evaluates measures without the uncertainty check. Numerical
/// failures (unstable under strict, singular, unphysical) are recorded in
/// `failure`; parameter/config errors throw.
PointResult evaluate_point(const Config& config, std::span<const ModePair> pairs = {});

/// As evaluate_point but throws NotStable (strict policy, unstable drift) or
/// the recorded numerical error instead of returning a partial result.
PointResult run_point(const Config& config, std::span<const ModePair> pairs = {});

enum class AxisScale { linear, log };

struct Axis {
  std::string key;
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  AxisScale scale = AxisScale::linear;

  /// Throws ConfigError: points >= 2, start != stop, settable key, log
  /// axes strictly positive.
  void validate() const;
  std::vector<double> values() const;
};

struct SweepSpec {
  Config base;
  Axis x;
  std::optional<Axis> y;
  std::vector<ModePair> pairs = default_pairs();
  std::string preset;  ///< figure preset id, empty for ad-hoc sweeps

  void validate() const;
};

struct SweepRow {
  double x = 0.0;
  std::optional<double> y;
  PointResult result;
};

/// Grid points in row-major order (x outer, y inner). Points are
/// independent and may run on `threads` workers; output order is fixed.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

struct StabilityRow {
  double x = 0.0;
  std::optional<double> y;
  double spectral_abscissa = 0.0;  ///< rad/s
  bool stable = false;
};

std::vector<StabilityRow> stability_map(const SweepSpec& spec, int threads = 1);

}  // namespace omm
