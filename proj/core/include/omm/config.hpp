#pragma once

#include "omm/gaussian.hpp"
#include "omm/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace omm {

enum class ParameterMode { effective, physical };

std::string_view to_string(ParameterMode m) noexcept;
std::string_view to_string(DriftConvention c) noexcept;
std::string_view to_string(LyapunovPolicy p) noexcept;
std::string_view to_string(SteadyStateMode m) noexcept;

std::optional<ParameterMode> parse_parameter_mode(std::string_view s) noexcept;
std::optional<DriftConvention> parse_drift_convention(std::string_view s) noexcept;
std::optional<LyapunovPolicy> parse_lyapunov_policy(std::string_view s) noexcept;
std::optional<SteadyStateMode> parse_steady_state_mode(std::string_view s) noexcept;

/// Flat numeric parameter set in config units: rates and frequencies are
/// linear frequencies in Hz (the "/2pi" values), temperature in K, angle in
/// rad, and SI for the physical-mode keys. Always holds every known key.
///
/// Keys: omega_b1 omega_b2 kappa_c kappa_m1 kappa_m2 gamma_b1 gamma_b2
///       delta_c delta_m1 delta_m2 G0 G_m1 G_m2 T_kelvin Phi_rad
///       G0_tilde (if > 0, G0 = G0_tilde cos^2(Phi/2))
///       omega_c omega_m1 omega_m2 (mode frequencies for thermal occupations)
/// Physical mode adds: lambda_L_m P_L_W H_d1_T H_d2_T g0 g_m1 g_m2 rho_m3 V_m3
/// The composite key G_m sets G_m1 and G_m2 together.
class ParameterSet {
 public:
  /// Operating point used throughout the figures.
  static ParameterSet baseline();

  static bool is_known(std::string_view key);
  /// Known keys plus composite keys accepted by set().
  static bool is_settable(std::string_view key);
  static const std::vector<std::string>& keys();

  double get(std::string_view key) const;
  /// Throws ConfigError on unknown keys or non-finite values.
  void set(std::string_view key, double value);

  const std::map<std::string, double, std::less<>>& values() const noexcept { return values_; }

 private:
  std::map<std::string, double, std::less<>> values_;
};

struct Config {
  ParameterSet params = ParameterSet::baseline();
  ParameterMode mode = ParameterMode::effective;
  DriftConvention drift = DriftConvention::appendix;
  LyapunovPolicy lyapunov = LyapunovPolicy::strict;
  SteadyStateMode steady_state = SteadyStateMode::exact;
  /// K/2pi in Hz; unset means default_kerr_coefficient(V).
  std::optional<double> kerr_hz;
  double validity_margin = 0.1;
};

/// Parses "key = value" lines; '#' starts a comment. Unset keys keep their
/// baseline value. Throws ConfigError with the offending line number.
Config parse_config(std::istream& in, std::string_view source = "<config>");
/// Throws IoError if unreadable.
Config load_config(const std::filesystem::path& path);

/// Effective-mode conversion (Hz -> rad/s, occupations from T).
EffectiveParams effective_from_config(const Config& config);
/// Physical-mode conversion.
PhysicalParams physical_from_config(const Config& config);

}  // namespace omm
