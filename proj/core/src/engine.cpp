#include "omm/engine.hpp"

#include "omm/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace omm {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

MeasureReport nan_report(ModePair pair) {
  return {pair, kNaN, Steering{kNaN, kNaN, kNaN}};
}

Config with_point(const Config& base, const Axis& x, double xv, const Axis* y, double yv) {
  Config c = base;
  c.params.set(x.key, xv);
  if (y) c.params.set(y->key, yv);
  return c;
}

// Evaluates fn(i) for i in [0, n) on up to `threads` workers; rethrows the
// first exception after all workers stop.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  const std::size_t workers =
      std::clamp<std::size_t>(threads > 0 ? static_cast<std::size_t>(threads) : 1, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = n;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

struct GridPoint {
  double x;
  std::optional<double> y;
};

std::vector<GridPoint> grid(const SweepSpec& spec) {
  std::vector<GridPoint> out;
  const std::vector<double> xs = spec.x.values();
  if (!spec.y) {
    for (double x : xs) out.push_back({x, std::nullopt});
    return out;
  }
  const std::vector<double> ys = spec.y->values();
  for (double x : xs)
    for (double y : ys) out.push_back({x, y});
  return out;
}

}  // namespace

EffectiveParams resolve_effective(const Config& config, std::optional<SteadyState>* steady,
                                  std::optional<DriveAmplitudes>* drive, bool* phase_warning) {
  if (config.mode == ParameterMode::effective) return effective_from_config(config);
  const PhysicalParams physical = physical_from_config(config);
  const SteadyState s = solve_steady_state(physical, config.steady_state);
  const EffectiveDerivation derived = derive_effective_couplings(physical, s);
  if (steady) *steady = s;
  if (drive) *drive = derive_drive_amplitudes(physical);
  if (phase_warning) *phase_warning = derived.phase_warning;
  return derived.params;
}

double kerr_coefficient(const Config& config) {
  if (config.kerr_hz) return constants::two_pi * *config.kerr_hz;
  return default_kerr_coefficient(config.params.get("V_m3"));
}

PointResult evaluate_point(const Config& config, std::span<const ModePair> pairs) {
  const std::vector<ModePair> fallback = default_pairs();
  if (pairs.empty()) pairs = fallback;

  PointResult r;
  r.effective = resolve_effective(config, &r.steady_state, &r.drive, &r.phase_warning);
  if (r.steady_state && r.drive) {
    r.validity = check_validity(*r.steady_state, *r.drive, kerr_coefficient(config),
                                config.validity_margin);
  }

  const DriftMatrix drift = build_drift(r.effective, config.drift);
  const DiffusionMatrix diffusion = build_diffusion(r.effective);
  r.stability = is_stable(drift);
  r.residual = kNaN;

  auto fail = [&](const std::string& why) {
    r.failure = why;
    r.measures.clear();
    for (const ModePair& p : pairs) r.measures.push_back(nan_report(p));
    return r;
  };

  if (config.lyapunov == LyapunovPolicy::strict && !r.stability.stable) {
    std::ostringstream msg;
    msg << "NotStable: spectral abscissa " << r.stability.spectral_abscissa << " rad/s";
    return fail(msg.str());
  }
  try {
    r.covariance = solve_lyapunov_algebraic(drift, diffusion);
    r.residual = lyapunov_residual(drift, diffusion, *r.covariance);
    r.physical = is_physical_covariance(r.covariance->matrix());
  } catch (const Error& e) {
    return fail(e.what());
  }
  const Physicality check =
      config.lyapunov == LyapunovPolicy::strict ? Physicality::enforce : Physicality::skip;
  for (const ModePair& p : pairs) {
    try {
      r.measures.push_back(measure_pair(*r.covariance, p, check));
    } catch (const Error& e) {
      if (r.failure.empty()) r.failure = e.what();
      r.measures.push_back(nan_report(p));
    }
  }
  return r;
}

PointResult run_point(const Config& config, std::span<const ModePair> pairs) {
  PointResult r = evaluate_point(config, pairs);
  if (config.lyapunov == LyapunovPolicy::strict && !r.stability.stable) {
    std::ostringstream msg;
    msg << "drift is not Hurwitz (spectral abscissa " << r.stability.spectral_abscissa
        << " rad/s)";
    throw Error(ErrorCode::NotStable, msg.str());
  }
  if (!r.failure.empty()) throw Error(ErrorCode::NumericalFailure, r.failure);
  return r;
}

void Axis::validate() const {
  if (!ParameterSet::is_settable(key)) {
    throw Error(ErrorCode::ConfigError, "sweep key '" + key + "' is not a parameter");
  }
  if (points < 2) throw Error(ErrorCode::ConfigError, "sweep needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || start == stop) {
    throw Error(ErrorCode::ConfigError, "sweep range must be finite with start != stop");
  }
  if (scale == AxisScale::log && !(start > 0.0 && stop > 0.0)) {
    throw Error(ErrorCode::ConfigError, "log sweep needs positive bounds");
  }
}

std::vector<double> Axis::values() const {
  validate();
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / last;
    if (scale == AxisScale::linear) {
      out[i] = i == points - 1 ? stop : start + (stop - start) * t;
    } else {
      out[i] = i == points - 1 ? stop
                               : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * t);
    }
  }
  return out;
}

void SweepSpec::validate() const {
  x.validate();
  if (y) {
    y->validate();
    if (y->key == x.key) throw Error(ErrorCode::ConfigError, "sweep axes must differ");
  }
  if (pairs.empty()) throw Error(ErrorCode::ConfigError, "no pairs requested");
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  const std::vector<GridPoint> points = grid(spec);
  std::vector<SweepRow> rows(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const GridPoint& g = points[i];
    const Config c = with_point(spec.base, spec.x, g.x, spec.y ? &*spec.y : nullptr, g.y.value_or(0.0));
    PointResult r;
    try {
      r = evaluate_point(c, spec.pairs);
    } catch (const Error& e) {
      // A missing mean-field solution ends the curve like an unstable point.
      if (e.code() != ErrorCode::NoConvergence && e.code() != ErrorCode::NumericalFailure) throw;
      r.stability.spectral_abscissa = kNaN;
      r.residual = kNaN;
      r.failure = e.what();
      for (const ModePair& p : spec.pairs) r.measures.push_back(nan_report(p));
    }
    rows[i] = SweepRow{g.x, g.y, std::move(r)};
  });
  return rows;
}

std::vector<StabilityRow> stability_map(const SweepSpec& spec, int threads) {
  spec.validate();
  const std::vector<GridPoint> points = grid(spec);
  std::vector<StabilityRow> rows(points.size());
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const GridPoint& g = points[i];
    const Config c = with_point(spec.base, spec.x, g.x, spec.y ? &*spec.y : nullptr, g.y.value_or(0.0));
    const EffectiveParams e = resolve_effective(c);
    const StabilityReport s = is_stable(build_drift(e, c.drift));
    rows[i] = StabilityRow{g.x, g.y, s.spectral_abscissa, s.stable};
  });
  return rows;
}

}  // namespace omm
