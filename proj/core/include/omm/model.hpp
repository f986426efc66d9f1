#pragma once

#include "omm/gaussian.hpp"

#include <array>
#include <complex>
#include <numbers>

namespace omm {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double k_B = 1.380649e-23;          // J / K
inline constexpr double c_light = 299792458.0;       // m / s
inline constexpr double two_pi = 2.0 * std::numbers::pi;
/// Gyromagnetic ratio 2*pi * 28 GHz/T, in rad/(s T).
inline constexpr double gyromagnetic = two_pi * 28e9;
}  // namespace constants

/// Bose-Einstein occupation 1/(exp(hbar*omega/(k_B*T)) - 1); 0 at T = 0.
/// Throws NonPositiveFrequency for omega <= 0, InvalidParameter for T < 0.
double thermal_occupation(double omega, double temperature);

/// Kittel-mode frequency gamma * H0 (rad/s).
double kittel_frequency(double bias_field);

/// Sign of the cavity coupling to phonon of arm j (0-based): (-1)^(j+1)
/// in 1-based labelling, i.e. -1 for arm 0 and +1 for arm 1.
constexpr double ring_sign(int arm) noexcept { return arm == 0 ? -1.0 : 1.0; }

// ---------------------------------------------------------------------------
// Solver-level parameters. All rates and frequencies in rad/s.

struct EffectiveArm {
  double delta_m = 0.0;  ///< effective magnon detuning (signed)
  double kappa_m = 0.0;
  double G_m = 0.0;      ///< magnomechanical coupling
  double omega_b = 0.0;  ///< phonon frequency, must be > 0
  double gamma_b = 0.0;
  double n_m = 0.0;      ///< thermal occupations
  double n_b = 0.0;
};

struct EffectiveParams {
  double delta_c = 0.0;  ///< effective cavity detuning (signed)
  double kappa_c = 0.0;
  double G0 = 0.0;       ///< optomechanical coupling
  double n_c = 0.0;
  std::array<EffectiveArm, 2> arm{};

  /// Throws InvalidParameter / NonPositiveFrequency.
  void validate() const;
  /// Exchange arm 0 and arm 1.
  EffectiveParams swapped_arms() const;
};

// ---------------------------------------------------------------------------
// Laboratory-level parameters (SI; angular rates in rad/s).

struct PhysicalArm {
  double omega_m = 0.0;      ///< magnon frequency
  double omega_b = 0.0;
  double kappa_m = 0.0;
  double gamma_b = 0.0;
  double g_m = 0.0;          ///< bare magnomechanical coupling
  double drive_field = 0.0;  ///< H_d (T)
  double delta_m = 0.0;      ///< magnon drive detuning omega_m - omega_0
};

struct PhysicalParams {
  double wavelength = 1064e-9;  ///< lambda_L (m)
  double mirror_angle = 0.0;    ///< Phi in [0, pi)
  double kappa_c = 0.0;
  double g0 = 0.0;              ///< bare optomechanical coupling
  double laser_power = 0.0;     ///< P_L (W)
  double spin_density = 0.0;    ///< rho (1/m^3)
  double volume = 0.0;          ///< bridge volume (m^3)
  double temperature = 0.0;     ///< K
  double delta_c = 0.0;         ///< cavity drive detuning omega_c - omega_L
  std::array<PhysicalArm, 2> arm{};

  double laser_frequency() const { return constants::two_pi * constants::c_light / wavelength; }
  /// Throws InvalidParameter / NonPositiveFrequency.
  void validate() const;
};

struct DriveAmplitudes {
  double cavity_drive = 0.0;      ///< E (rad/s)
  std::array<double, 2> rabi{};   ///< Omega_j (rad/s)
  double spin_count = 0.0;        ///< N0
};

/// N0 = rho*V, Omega_j = (sqrt5/4) gamma sqrt(N0) H_dj, E = sqrt(kappa_c P_L / (hbar omega_L)).
DriveAmplitudes derive_drive_amplitudes(const PhysicalParams& p);

enum class SteadyStateMode {
  /// Detunings in PhysicalParams are bare; iterate the mean-field shifts to a
  /// fixed point.
  exact,
  /// Detunings in PhysicalParams are already effective and |detuning| >> kappa:
  /// alpha = E/(i*Delta), m_j = Omega_j/(i*Delta_mj). No iteration.
  approximate,
};

struct SteadyState {
  std::complex<double> alpha{};
  std::array<std::complex<double>, 2> magnon{};
  std::array<double, 2> displacement{};  ///< q_js (dimensionless)
  double delta_c = 0.0;                  ///< effective detunings
  std::array<double, 2> delta_m{};
  double residual = 0.0;
  int iterations = 0;
  SteadyStateMode mode = SteadyStateMode::exact;
};

struct SteadyStateOptions {
  double relaxation = 0.5;
  int max_iterations = 10000;
  double tolerance = 1e-10;
};

/// Optomechanical coupling of the cavity to phonon j: -(-1)^j g0 cos^2(Phi/2).
double cavity_phonon_coupling(const PhysicalParams& p, int arm);

/// Self-consistent mean fields. Throws NoConvergence if the damped iteration
/// does not reach the tolerance (multi-valued / bistable regime).
SteadyState solve_steady_state(const PhysicalParams& p,
                               SteadyStateMode mode = SteadyStateMode::exact,
                               const SteadyStateOptions& options = {});

struct EffectiveDerivation {
  EffectiveParams params;
  /// Largest angular distance of i*alpha_s, i*m_js from the real axis.
  double phase_deviation = 0.0;
  bool phase_warning = false;  ///< phase_deviation > 0.1 rad
};

/// G0 = sqrt2 g0 |alpha_s| cos^2(Phi/2), G_mj = sqrt2 g_mj |m_js|, plus
/// thermal occupations of every mode at p.temperature.
EffectiveDerivation derive_effective_couplings(const PhysicalParams& p, const SteadyState& s);

enum class DriftConvention {
  /// Phonon momentum driven by the cavity J quadrature (Hamiltonian form).
  appendix,
  /// Literal placement on the cavity I column.
  eq9,
};

/// 10x10 drift matrix in layout order (I_c, J_c, I_m1, J_m1, q1, p1, I_m2, J_m2, q2, p2).
DriftMatrix build_drift(const EffectiveParams& e,
                        DriftConvention convention = DriftConvention::appendix);

/// diag(kc Nc, kc Nc, km1 Nm1, km1 Nm1, 0, gb1 Nb1, km2 Nm2, km2 Nm2, 0, gb2 Nb2), N = 2n + 1.
DiffusionMatrix build_diffusion(const EffectiveParams& e);

}  // namespace omm
