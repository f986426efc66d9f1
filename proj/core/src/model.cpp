#include "omm/model.hpp"

#include "omm/errors.hpp"
#include "omm/layout.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace omm {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

void require_nonneg(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be finite and >= 0");
}

void require_phonon_frequency(double omega_b) {
  if (!(std::isfinite(omega_b) && omega_b > 0.0)) {
    throw Error(ErrorCode::NonPositiveFrequency, "phonon frequency must be > 0");
  }
}

double cos2_half(double angle) {
  const double c = std::cos(0.5 * angle);
  return c * c;
}

// Angular distance of z from the real axis.
double off_axis(std::complex<double> z) {
  if (std::abs(z) == 0.0) return 0.0;
  const double a = std::abs(std::arg(z));
  return std::min(a, std::numbers::pi - a);
}

}  // namespace

double thermal_occupation(double omega, double temperature) {
  if (!(omega > 0.0)) throw Error(ErrorCode::NonPositiveFrequency, "mode frequency must be > 0");
  require(std::isfinite(temperature) && temperature >= 0.0, "temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega / (constants::k_B * temperature);
  return 1.0 / std::expm1(x);
}

double kittel_frequency(double bias_field) { return constants::gyromagnetic * bias_field; }

void EffectiveParams::validate() const {
  require(std::isfinite(delta_c), "delta_c must be finite");
  require_nonneg(kappa_c, "kappa_c");
  require_nonneg(G0, "G0");
  require_nonneg(n_c, "n_c");
  for (const auto& a : arm) {
    require(std::isfinite(a.delta_m), "delta_m must be finite");
    require_nonneg(a.kappa_m, "kappa_m");
    require_nonneg(a.G_m, "G_m");
    require_nonneg(a.gamma_b, "gamma_b");
    require_nonneg(a.n_m, "n_m");
    require_nonneg(a.n_b, "n_b");
    require_phonon_frequency(a.omega_b);
  }
}

EffectiveParams EffectiveParams::swapped_arms() const {
  EffectiveParams out = *this;
  std::swap(out.arm[0], out.arm[1]);
  return out;
}

void PhysicalParams::validate() const {
  require(std::isfinite(wavelength) && wavelength > 0.0, "wavelength must be > 0");
  require(std::isfinite(mirror_angle) && mirror_angle >= 0.0 && mirror_angle < std::numbers::pi,
          "mirror angle must lie in [0, pi)");
  require_nonneg(kappa_c, "kappa_c");
  require_nonneg(g0, "g0");
  require_nonneg(laser_power, "laser power");
  require_nonneg(spin_density, "spin density");
  require(std::isfinite(volume) && volume > 0.0, "volume must be > 0");
  require_nonneg(temperature, "temperature");
  require(std::isfinite(delta_c), "delta_c must be finite");
  for (const auto& a : arm) {
    require_nonneg(a.omega_m, "omega_m");
    require_nonneg(a.kappa_m, "kappa_m");
    require_nonneg(a.gamma_b, "gamma_b");
    require_nonneg(a.g_m, "g_m");
    require_nonneg(a.drive_field, "drive field");
    require(std::isfinite(a.delta_m), "delta_m must be finite");
    require_phonon_frequency(a.omega_b);
  }
}

DriveAmplitudes derive_drive_amplitudes(const PhysicalParams& p) {
  p.validate();
  DriveAmplitudes d;
  d.spin_count = p.spin_density * p.volume;
  const double prefactor = std::sqrt(5.0) / 4.0 * constants::gyromagnetic * std::sqrt(d.spin_count);
  for (int j = 0; j < 2; ++j) d.rabi[j] = prefactor * p.arm[j].drive_field;
  d.cavity_drive =
      std::sqrt(p.kappa_c * p.laser_power / (constants::hbar * p.laser_frequency()));
  return d;
}

double cavity_phonon_coupling(const PhysicalParams& p, int arm) {
  return -ring_sign(arm) * p.g0 * cos2_half(p.mirror_angle);
}

SteadyState solve_steady_state(const PhysicalParams& p, SteadyStateMode mode,
                               const SteadyStateOptions& options) {
  const DriveAmplitudes drive = derive_drive_amplitudes(p);
  const std::complex<double> i(0.0, 1.0);
  const std::array<double, 2> gbar = {cavity_phonon_coupling(p, 0), cavity_phonon_coupling(p, 1)};

  SteadyState s;
  s.mode = mode;

  auto displacement = [&](int j, double alpha2, double m2) {
    return -(gbar[j] * alpha2 + p.arm[j].g_m * m2) / p.arm[j].omega_b;
  };

  if (mode == SteadyStateMode::approximate) {
    require(p.delta_c != 0.0 && p.arm[0].delta_m != 0.0 && p.arm[1].delta_m != 0.0,
            "approximate steady state needs non-zero effective detunings");
    s.delta_c = p.delta_c;
    s.alpha = drive.cavity_drive / (i * p.delta_c);
    for (int j = 0; j < 2; ++j) {
      s.delta_m[j] = p.arm[j].delta_m;
      s.magnon[j] = drive.rabi[j] / (i * p.arm[j].delta_m);
    }
    for (int j = 0; j < 2; ++j) {
      s.displacement[j] = displacement(j, std::norm(s.alpha), std::norm(s.magnon[j]));
    }
    return s;
  }

  std::array<double, 2> q = {0.0, 0.0};
  double residual = INFINITY;
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    s.delta_c = p.delta_c + gbar[0] * q[0] + gbar[1] * q[1];
    s.alpha = drive.cavity_drive / (i * s.delta_c + p.kappa_c);
    std::array<double, 2> next{};
    for (int j = 0; j < 2; ++j) {
      s.delta_m[j] = p.arm[j].delta_m + p.arm[j].g_m * q[j];
      s.magnon[j] = drive.rabi[j] / (i * s.delta_m[j] + p.arm[j].kappa_m);
      next[j] = displacement(j, std::norm(s.alpha), std::norm(s.magnon[j]));
    }
    const double diff = std::hypot(next[0] - q[0], next[1] - q[1]);
    residual = diff / std::max(1.0, std::hypot(next[0], next[1]));
    if (!std::isfinite(residual)) break;
    if (residual <= options.tolerance) {
      q = next;
      break;
    }
    for (int j = 0; j < 2; ++j) q[j] = (1.0 - options.relaxation) * q[j] + options.relaxation * next[j];
  }
  if (!(residual <= options.tolerance)) {
    std::ostringstream msg;
    msg << "steady state did not converge after " << iter << " iterations (residual " << residual
        << ")";
    throw Error(ErrorCode::NoConvergence, msg.str());
  }
  // Final evaluation at the converged displacement.
  s.displacement = q;
  s.delta_c = p.delta_c + gbar[0] * q[0] + gbar[1] * q[1];
  s.alpha = drive.cavity_drive / (i * s.delta_c + p.kappa_c);
  for (int j = 0; j < 2; ++j) {
    s.delta_m[j] = p.arm[j].delta_m + p.arm[j].g_m * q[j];
    s.magnon[j] = drive.rabi[j] / (i * s.delta_m[j] + p.arm[j].kappa_m);
  }
  s.residual = residual;
  s.iterations = iter + 1;
  return s;
}

EffectiveDerivation derive_effective_couplings(const PhysicalParams& p, const SteadyState& s) {
  p.validate();
  const std::complex<double> i(0.0, 1.0);
  EffectiveDerivation out;
  EffectiveParams& e = out.params;
  e.delta_c = s.delta_c;
  e.kappa_c = p.kappa_c;
  e.G0 = std::sqrt(2.0) * p.g0 * std::abs(s.alpha) * cos2_half(p.mirror_angle);
  // Optical: omega_c ~ omega_L up to a detuning many orders smaller.
  e.n_c = thermal_occupation(p.laser_frequency(), p.temperature);
  out.phase_deviation = off_axis(i * s.alpha);
  for (int j = 0; j < 2; ++j) {
    const PhysicalArm& a = p.arm[j];
    EffectiveArm& ea = e.arm[j];
    ea.delta_m = s.delta_m[j];
    ea.kappa_m = a.kappa_m;
    ea.G_m = std::sqrt(2.0) * a.g_m * std::abs(s.magnon[j]);
    ea.omega_b = a.omega_b;
    ea.gamma_b = a.gamma_b;
    ea.n_m = a.omega_m > 0.0 ? thermal_occupation(a.omega_m, p.temperature) : 0.0;
    ea.n_b = thermal_occupation(a.omega_b, p.temperature);
    out.phase_deviation = std::max(out.phase_deviation, off_axis(i * s.magnon[j]));
  }
  out.phase_warning = out.phase_deviation > 0.1;
  return out;
}

DriftMatrix build_drift(const EffectiveParams& e, DriftConvention convention) {
  e.validate();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kQuadratureCount, kQuadratureCount);
  const int ic = offset(Mode::c);
  const int jc = ic + 1;
  a(ic, ic) = -e.kappa_c;
  a(ic, jc) = e.delta_c;
  a(jc, ic) = -e.delta_c;
  a(jc, jc) = -e.kappa_c;

  for (int j = 0; j < 2; ++j) {
    const EffectiveArm& arm = e.arm[j];
    const int im = offset(magnon_of(j));
    const int jm = im + 1;
    const int q = offset(phonon_of(j));
    const int p = q + 1;

    a(im, im) = -arm.kappa_m;
    a(im, jm) = arm.delta_m;
    a(jm, im) = -arm.delta_m;
    a(jm, jm) = -arm.kappa_m;
    a(im, q) = -arm.G_m;
    a(p, jm) = arm.G_m;
    a(q, p) = arm.omega_b;
    a(p, q) = -arm.omega_b;
    a(p, p) = -arm.gamma_b;

    const double s = ring_sign(j);
    a(ic, q) = s * e.G0;
    if (convention == DriftConvention::appendix) {
      a(p, jc) = -s * e.G0;
    } else {
      a(p, ic) = -s * e.G0;
    }
  }
  return DriftMatrix(std::move(a));
}

DiffusionMatrix build_diffusion(const EffectiveParams& e) {
  e.validate();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(kQuadratureCount);
  const int ic = offset(Mode::c);
  d(ic) = d(ic + 1) = e.kappa_c * (2.0 * e.n_c + 1.0);
  for (int j = 0; j < 2; ++j) {
    const EffectiveArm& arm = e.arm[j];
    const int im = offset(magnon_of(j));
    const int p = offset(phonon_of(j)) + 1;
    d(im) = d(im + 1) = arm.kappa_m * (2.0 * arm.n_m + 1.0);
    d(p) = arm.gamma_b * (2.0 * arm.n_b + 1.0);
  }
  return DiffusionMatrix(d.asDiagonal());
}

}  // namespace omm
