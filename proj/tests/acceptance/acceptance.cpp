// One PASS/FAIL line per primary criterion. Exit status is non-zero when a
// criterion fails unexpectedly or a known-unattainable one starts passing.

#include "omm/omm.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>

namespace {

using namespace omm;

// Pinned tolerances.
constexpr double kEnCm1Target = 0.25, kEnCm1Tol = 0.05;
constexpr double kEnM1m2Target = 0.10, kEnM1m2Tol = 0.04;
constexpr double kSteerTarget = 0.14, kSteerTol = 0.06;
constexpr double kFig5Magnon = 1e-3;
constexpr double kFig5Equal = 1e-6;
constexpr double kResidual = 1e-10;
constexpr double kOracle = 1e-6;
constexpr double kPhysical = 1e-9;
constexpr double kRouteAgreement = 1e-9;
constexpr double kDecoupled = 1e-12;
constexpr double kExchange = 1e-9;
constexpr double kSpinCount = 4.22e10;
constexpr double kRabi = 1.7e13, kRabiTol = 0.10;
constexpr double kMagnon = 6.77e4, kMagnonTol = 0.10;
constexpr double kRatio = 0.021, kRatioTol = 0.20;
constexpr double kKerrCrit = 8.57e-3, kKerrTol = 0.20;
constexpr int kOracleInstances = 20;
constexpr int kStabilityMatrices = 100;

// Criteria whose failure is analysed and expected.
const std::set<std::string> kKnownUnattainable = {"physicality"};

int unexpected = 0;

void report(const std::string& id, bool pass, const std::string& detail) {
  const bool known = kKnownUnattainable.count(id) > 0;
  std::printf("%s  %-18s %s%s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str(),
              known ? "  [known unattainable]" : "");
  if (pass == known) ++unexpected;
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

PointResult preset_point(std::initializer_list<std::pair<const char*, double>> set) {
  Config c = preset_base_config();
  for (const auto& [k, v] : set) c.params.set(k, v);
  return evaluate_point(c);
}

double en(const PointResult& r, int pair) { return r.measures.at(pair).log_negativity; }

void fig2_optimum() {
  const PointResult r = preset_point({});
  double steer = 0.0;
  for (const char* id : {"fig2f", "fig2g"}) {
    for (const SweepRow& row : run_sweep(figure_preset(id), threads())) {
      const Steering& s = row.result.measures.at(2).steering;
      steer = std::max({steer, s.a_to_b, s.b_to_a});
    }
  }
  const bool pass = std::abs(en(r, 0) - kEnCm1Target) <= kEnCm1Tol &&
                    std::abs(en(r, 2) - kEnM1m2Target) <= kEnM1m2Tol &&
                    std::abs(steer - kSteerTarget) <= kSteerTol;
  report("fig2-optimum", pass,
         "E_c-m1 = " + fmt(en(r, 0)) + ", E_m1-m2 = " + fmt(en(r, 2)) +
             ", max S_m1-m2 over detuning sweeps = " + fmt(steer));
}

void fig5_null() {
  double magnon = 0.0;
  double diff = 0.0;
  std::size_t missing = 0;
  for (const SweepRow& row : run_sweep(figure_preset("fig5"), threads())) {
    const double m = std::abs(en(row.result, 2));
    const double d = std::abs(en(row.result, 0) - en(row.result, 1));
    if (!std::isfinite(m) || !std::isfinite(d)) {
      ++missing;
      continue;
    }
    magnon = std::max(magnon, m);
    diff = std::max(diff, d);
  }
  report("fig5-null", missing == 0 && magnon < kFig5Magnon && diff < kFig5Equal,
         "max E_m1-m2 = " + fmt(magnon) + ", max |E_c-m1 - E_c-m2| = " + fmt(diff) +
             ", NaN rows = " + std::to_string(missing));
}

void temperature() {
  const double a = en(preset_point({{"T_kelvin", 0.4}}), 0);
  const double b = en(preset_point({{"T_kelvin", 0.7}}), 0);
  const double c = en(preset_point({{"T_kelvin", 0.1}}), 2);
  const double d = en(preset_point({{"T_kelvin", 0.3}}), 2);
  report("temperature", a > 0.0 && b == 0.0 && c > 0.0 && d == 0.0,
         "E_c-m1(0.4 K) = " + fmt(a) + ", E_c-m1(0.7 K) = " + fmt(b) + ", E_m1-m2(0.1 K) = " +
             fmt(c) + ", E_m1-m2(0.3 K) = " + fmt(d));
}

void fig3_cutoff() {
  const double a = en(preset_point({{"G0", 4.0e6}}), 2);
  const double b = en(preset_point({{"G0", 4.6e6}}), 2);
  report("fig3-cutoff", a > 0.0 && b == 0.0,
         "E_m1-m2(G0 = 4.0 MHz) = " + fmt(a) + ", E_m1-m2(G0 = 4.6 MHz) = " + fmt(b));
}

struct PresetScan {
  std::size_t points = 0;
  std::size_t stable = 0;
  std::size_t unphysical = 0;
  std::size_t stable_unphysical = 0;
  double worst_residual = 0.0;
  double stable_min_nu = INFINITY;
  std::size_t route_pairs = 0;
  double route_error = 0.0;
};

PresetScan scan_presets() {
  PresetScan s;
  for (const std::string& id : preset_ids()) {
    for (const SweepRow& row : run_sweep(figure_preset(id), threads())) {
      const PointResult& r = row.result;
      ++s.points;
      if (!r.covariance) {
        s.worst_residual = INFINITY;
        continue;
      }
      s.worst_residual = std::max(s.worst_residual, r.residual);
      if (!r.physical) ++s.unphysical;
      if (r.stability.stable) {
        ++s.stable;
        if (!r.physical) ++s.stable_unphysical;
        const auto nu = symplectic_eigenvalues(r.covariance->matrix());
        s.stable_min_nu = std::min(s.stable_min_nu, nu.front());
      }
      for (const ModePair& p : default_pairs()) {
        const ReducedCovariance red = reduce(*r.covariance, p);
        if (!is_physical_covariance(red.cm)) continue;
        const double closed = log_negativity(red);
        if (closed <= 0.0) continue;
        ++s.route_pairs;
        s.route_error = std::max(s.route_error, std::abs(closed - log_negativity_symplectic(red)));
      }
    }
  }
  return s;
}

void lyapunov(const PresetScan& scan) {
  std::mt19937_64 rng(20240611);
  int tested = 0;
  double worst = 0.0;
  bool converged = true;
  while (tested < kOracleInstances) {
    const EffectiveParams e = testing::random_effective(rng);
    const DriftMatrix a = build_drift(e);
    const StabilityReport st = is_stable(a);
    if (!st.stable || st.spectral_abscissa > -0.02) continue;
    const DiffusionMatrix d = build_diffusion(e);
    const CovarianceMatrix v = solve_lyapunov(a, d);
    const testing::MomentIntegration ode = testing::integrate_moments(a.matrix(), d.matrix());
    converged = converged && ode.converged;
    worst = std::max(worst, (ode.covariance - v.matrix()).norm() / v.matrix().norm());
    ++tested;
  }
  report("lyapunov", scan.worst_residual <= kResidual && converged && worst <= kOracle,
         "max preset residual = " + fmt(scan.worst_residual, 3) + " over " +
             std::to_string(scan.points) + " points; max ODE-oracle deviation = " +
             fmt(worst, 3) + " over " + std::to_string(tested) + " stable instances");
}

void physicality(const PresetScan& scan) {
  std::mt19937_64 rng(99);
  double random_error = 0.0;
  for (int i = 0; i < 200; ++i) {
    const ReducedCovariance r{{Mode::c, Mode::m1}, testing::random_physical_state(rng, 2)};
    random_error = std::max(random_error, std::abs(log_negativity(r) - log_negativity_symplectic(r)));
  }
  const bool covered = scan.stable > 0;
  const bool states_ok = covered && scan.stable_unphysical == 0 && scan.stable_min_nu >= 0.5 - kPhysical;
  const bool routes_ok = scan.route_error <= kRouteAgreement && random_error <= kRouteAgreement;
  std::string detail = "stable preset points = " + std::to_string(scan.stable) + "/" +
                       std::to_string(scan.points);
  if (covered) detail += ", min nu on stable points = " + fmt(scan.stable_min_nu, 6);
  detail += "; preset covariances violating V + i*Omega/2 >= 0: " +
            std::to_string(scan.unphysical) + "/" + std::to_string(scan.points) +
            "; E_N closed form vs PT route max error = " +
            fmt(std::max(scan.route_error, random_error), 3) + " (" +
            std::to_string(scan.route_pairs) + " physical preset pairs + 200 random states)";
  report("physicality", states_ok && routes_ok, detail);
}

void decoupled() {
  Config c = preset_base_config();
  c.params.set("G0", 0.0);
  c.params.set("G_m", 0.0);
  const EffectiveParams e = effective_from_config(c);
  const CovarianceMatrix v = solve_lyapunov(build_drift(e), build_diffusion(e));
  const double n[5] = {e.n_c, e.arm[0].n_m, e.arm[0].n_b, e.arm[1].n_m, e.arm[1].n_b};
  double diag = 0.0;
  double off = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      if (i == j) {
        const double target = (2.0 * n[i / 2] + 1.0) / 2.0;
        diag = std::max(diag, std::abs(v(i, j) - target) / target);
      } else {
        off = std::max(off, std::abs(v(i, j)));
      }
    }
  }
  report("decoupled-limit", diag <= kDecoupled && off <= kDecoupled,
         "max relative variance error = " + fmt(diag, 3) + ", max |cross covariance| = " +
             fmt(off, 3));
}

double exchange_error(const EffectiveParams& e, Physicality check) {
  const EffectiveParams w = e.swapped_arms();
  const auto v = solve_lyapunov_algebraic(build_drift(e), build_diffusion(e));
  const auto vw = solve_lyapunov_algebraic(build_drift(w), build_diffusion(w));
  const auto m = all_pairs_report(v, default_pairs(), check);
  const auto x = all_pairs_report(vw, default_pairs(), check);
  auto d = [](double a, double b) { return std::abs(a - b); };
  return std::max({d(m[0].log_negativity, x[1].log_negativity),
                   d(m[1].log_negativity, x[0].log_negativity),
                   d(m[0].steering.a_to_b, x[1].steering.a_to_b),
                   d(m[0].steering.b_to_a, x[1].steering.b_to_a),
                   d(m[1].steering.a_to_b, x[0].steering.a_to_b),
                   d(m[1].steering.b_to_a, x[0].steering.b_to_a),
                   d(m[2].log_negativity, x[2].log_negativity),
                   d(m[2].steering.a_to_b, x[2].steering.b_to_a),
                   d(m[2].steering.b_to_a, x[2].steering.a_to_b),
                   d(m[2].steering.asymmetry, x[2].steering.asymmetry)});
}

void exchange() {
  double worst = exchange_error(effective_from_config(preset_base_config()), Physicality::skip);
  std::mt19937_64 rng(13);
  int tested = 0;
  while (tested < 10) {
    const EffectiveParams e = testing::random_effective(rng);
    if (!is_stable(build_drift(e)).stable) continue;
    worst = std::max(worst, exchange_error(e, Physicality::enforce));
    ++tested;
  }
  report("exchange-symmetry", worst <= kExchange,
         "max measure mismatch after 1<->2 swap = " + fmt(worst, 3) +
             " (baseline + 10 stable instances)");
}

void validity_chain() {
  Config c = preset_base_config();
  c.mode = ParameterMode::physical;
  const PhysicalParams p = physical_from_config(c);
  const DriveAmplitudes d = derive_drive_amplitudes(p);
  const SteadyState s = solve_steady_state(p);
  const MagnonNumberCheck n = check_magnon_number(s, 0, d.spin_count);
  const KerrCheck k = check_kerr(s, 0, d.rabi[0], 0.0);
  const double m = std::abs(s.magnon[0]);
  const double kcrit = k.critical / constants::two_pi;
  auto within = [](double v, double target, double tol) {
    return std::abs(v - target) <= tol * target;
  };
  const bool pass = std::abs(d.spin_count - kSpinCount) <= 1e-12 * kSpinCount &&
                    within(d.rabi[0], kRabi, kRabiTol) && within(m, kMagnon, kMagnonTol) &&
                    within(n.ratio, kRatio, kRatioTol) && within(kcrit, kKerrCrit, kKerrTol);
  report("validity-chain", pass,
         "N0 = " + fmt(d.spin_count, 6) + ", Omega1 = " + fmt(d.rabi[0]) + " rad/s, |m1s| = " +
             fmt(m) + ", ratio = " + fmt(n.ratio) + ", K_crit/2pi = " + fmt(kcrit * 1e3) +
             " mHz");
}

void stability_crosscheck() {
  std::mt19937_64 rng(17);
  int agree = 0;
  int stable = 0;
  int exact_agree = 0;
  for (int i = 0; i < kStabilityMatrices; ++i) {
    const DriftMatrix a = build_drift(testing::random_effective(rng, 1.2));
    const bool eig = is_stable(a).stable;
    agree += eig == routh_hurwitz(a).stable;
    exact_agree += eig == testing::exact_routh(a.matrix()).stable;
    stable += eig;
  }
  const bool spans = stable > 0 && stable < kStabilityMatrices;
  report("stability-check", agree == kStabilityMatrices && spans,
         std::to_string(agree) + "/" + std::to_string(kStabilityMatrices) +
             " agree (" + std::to_string(stable) + " stable); exact-rational oracle agrees on " +
             std::to_string(exact_agree));
}

void baseline_note() {
  Config c = preset_base_config();
  const StabilityReport s = is_stable(build_drift(effective_from_config(c)));
  std::printf("INFO  baseline drift stable = %d, spectral abscissa / 2pi = %s Hz\n", s.stable ? 1 : 0,
              fmt(s.spectral_abscissa / constants::two_pi, 6).c_str());
}

}  // namespace

int main() {
  baseline_note();
  fig2_optimum();
  fig5_null();
  temperature();
  fig3_cutoff();
  const PresetScan scan = scan_presets();
  lyapunov(scan);
  physicality(scan);
  decoupled();
  exchange();
  validity_chain();
  stability_crosscheck();
  std::printf("%s\n", unexpected == 0 ? "acceptance: as expected" : "acceptance: UNEXPECTED RESULTS");
  return unexpected == 0 ? 0 : 1;
}
