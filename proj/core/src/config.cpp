#include "omm/config.hpp"

#include "omm/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace omm {
namespace {

struct KeyDefault {
  const char* key;
  double value;
};

// Hz unless the key says otherwise.
constexpr KeyDefault kBaseline[] = {
    {"omega_b1", 40e6},       {"omega_b2", 40e6},      {"kappa_c", 2e6},
    {"kappa_m1", 1e6},        {"kappa_m2", 1e6},       {"gamma_b1", 100.0},
    {"gamma_b2", 100.0},      {"delta_c", 40e6},       {"delta_m1", -40e6},
    {"delta_m2", -40e6},      {"G0", 3e6},             {"G_m1", 2e6},
    {"G_m2", 1e6},            {"T_kelvin", 0.01},      {"Phi_rad", std::numbers::pi / 3.0},
    {"G0_tilde", 0.0},        {"omega_c", constants::c_light / 1064e-9},
    {"omega_m1", 10e9},       {"omega_m2", 10e9},
    // physical mode
    {"lambda_L_m", 1064e-9},  {"P_L_W", 6.67e-3},       {"H_d1_T", 8.7e-4},
    {"H_d2_T", 4.4e-4},       {"g0", 1e3},             {"g_m1", 20.0},
    {"g_m2", 20.0},           {"rho_m3", 4.22e27},     {"V_m3", 5e-6 * 2e-6 * 1e-6},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

[[noreturn]] void config_error(std::string_view source, int line, const std::string& what) {
  std::ostringstream msg;
  msg << source << ":" << line << ": " << what;
  throw Error(ErrorCode::ConfigError, msg.str());
}

double cos2_half(double angle) {
  const double c = std::cos(0.5 * angle);
  return c * c;
}

}  // namespace

std::string_view to_string(ParameterMode m) noexcept {
  return m == ParameterMode::effective ? "effective" : "physical";
}
std::string_view to_string(DriftConvention c) noexcept {
  return c == DriftConvention::appendix ? "appendix" : "eq9";
}
std::string_view to_string(LyapunovPolicy p) noexcept {
  return p == LyapunovPolicy::strict ? "strict" : "algebraic";
}
std::string_view to_string(SteadyStateMode m) noexcept {
  return m == SteadyStateMode::exact ? "exact" : "approximate";
}

std::optional<ParameterMode> parse_parameter_mode(std::string_view s) noexcept {
  if (s == "effective") return ParameterMode::effective;
  if (s == "physical") return ParameterMode::physical;
  return std::nullopt;
}
std::optional<DriftConvention> parse_drift_convention(std::string_view s) noexcept {
  if (s == "appendix") return DriftConvention::appendix;
  if (s == "eq9") return DriftConvention::eq9;
  return std::nullopt;
}
std::optional<LyapunovPolicy> parse_lyapunov_policy(std::string_view s) noexcept {
  if (s == "strict") return LyapunovPolicy::strict;
  if (s == "algebraic") return LyapunovPolicy::algebraic;
  return std::nullopt;
}
std::optional<SteadyStateMode> parse_steady_state_mode(std::string_view s) noexcept {
  if (s == "exact") return SteadyStateMode::exact;
  if (s == "approximate") return SteadyStateMode::approximate;
  return std::nullopt;
}

ParameterSet ParameterSet::baseline() {
  ParameterSet p;
  for (const auto& kd : kBaseline) p.values_.emplace(kd.key, kd.value);
  return p;
}

const std::vector<std::string>& ParameterSet::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const auto& kd : kBaseline) out.emplace_back(kd.key);
    return out;
  }();
  return k;
}

bool ParameterSet::is_known(std::string_view key) {
  const auto& k = keys();
  return std::find(k.begin(), k.end(), key) != k.end();
}

bool ParameterSet::is_settable(std::string_view key) { return key == "G_m" || is_known(key); }

double ParameterSet::get(std::string_view key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::ConfigError, "unknown parameter '" + std::string(key) + "'");
  }
  return it->second;
}

void ParameterSet::set(std::string_view key, double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::ConfigError, "parameter '" + std::string(key) + "' must be finite");
  }
  if (key == "G_m") {
    values_["G_m1"] = value;
    values_["G_m2"] = value;
    return;
  }
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw Error(ErrorCode::ConfigError, "unknown parameter '" + std::string(key) + "'");
  }
  it->second = value;
}

Config parse_config(std::istream& in, std::string_view source) {
  Config config;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) config_error(source, line_no, "expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) config_error(source, line_no, "empty key or value");

    if (key == "mode") {
      const auto m = parse_parameter_mode(value);
      if (!m) config_error(source, line_no, "mode must be effective|physical");
      config.mode = *m;
    } else if (key == "drift_convention") {
      const auto c = parse_drift_convention(value);
      if (!c) config_error(source, line_no, "drift_convention must be appendix|eq9");
      config.drift = *c;
    } else if (key == "lyapunov") {
      const auto p = parse_lyapunov_policy(value);
      if (!p) config_error(source, line_no, "lyapunov must be strict|algebraic");
      config.lyapunov = *p;
    } else if (key == "steady_state") {
      const auto s = parse_steady_state_mode(value);
      if (!s) config_error(source, line_no, "steady_state must be exact|approximate");
      config.steady_state = *s;
    } else {
      const auto v = parse_double(value);
      if (!v) config_error(source, line_no, "'" + std::string(value) + "' is not a number");
      if (key == "kerr_K_hz") {
        if (*v < 0.0) config_error(source, line_no, "kerr_K_hz must be >= 0");
        config.kerr_hz = *v;
      } else if (key == "validity_margin") {
        if (!(*v > 0.0)) config_error(source, line_no, "validity_margin must be > 0");
        config.validity_margin = *v;
      } else if (ParameterSet::is_settable(key)) {
        config.params.set(key, *v);
      } else {
        config_error(source, line_no, "unknown key '" + std::string(key) + "'");
      }
    }
  }
  return config;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config '" + path.string() + "'");
  return parse_config(in, path.string());
}

EffectiveParams effective_from_config(const Config& config) {
  const ParameterSet& p = config.params;
  constexpr double w = constants::two_pi;
  const double temperature = p.get("T_kelvin");
  if (!(temperature >= 0.0)) throw Error(ErrorCode::ConfigError, "T_kelvin must be >= 0");

  EffectiveParams e;
  e.delta_c = w * p.get("delta_c");
  e.kappa_c = w * p.get("kappa_c");
  e.G0 = p.get("G0_tilde") > 0.0 ? w * p.get("G0_tilde") * cos2_half(p.get("Phi_rad"))
                                 : w * p.get("G0");
  e.n_c = thermal_occupation(w * p.get("omega_c"), temperature);
  for (int j = 0; j < 2; ++j) {
    const std::string s = std::to_string(j + 1);
    EffectiveArm& a = e.arm[j];
    a.delta_m = w * p.get("delta_m" + s);
    a.kappa_m = w * p.get("kappa_m" + s);
    a.G_m = w * p.get("G_m" + s);
    a.omega_b = w * p.get("omega_b" + s);
    a.gamma_b = w * p.get("gamma_b" + s);
    a.n_m = thermal_occupation(w * p.get("omega_m" + s), temperature);
    a.n_b = thermal_occupation(a.omega_b, temperature);
  }
  e.validate();
  return e;
}

PhysicalParams physical_from_config(const Config& config) {
  const ParameterSet& p = config.params;
  constexpr double w = constants::two_pi;
  PhysicalParams ph;
  ph.wavelength = p.get("lambda_L_m");
  ph.mirror_angle = p.get("Phi_rad");
  ph.kappa_c = w * p.get("kappa_c");
  ph.g0 = w * p.get("g0");
  ph.laser_power = p.get("P_L_W");
  ph.spin_density = p.get("rho_m3");
  ph.volume = p.get("V_m3");
  ph.temperature = p.get("T_kelvin");
  ph.delta_c = w * p.get("delta_c");
  for (int j = 0; j < 2; ++j) {
    const std::string s = std::to_string(j + 1);
    PhysicalArm& a = ph.arm[j];
    a.omega_m = w * p.get("omega_m" + s);
    a.omega_b = w * p.get("omega_b" + s);
    a.kappa_m = w * p.get("kappa_m" + s);
    a.gamma_b = w * p.get("gamma_b" + s);
    a.g_m = w * p.get("g_m" + s);
    a.drive_field = p.get("H_d" + s + "_T");
    a.delta_m = w * p.get("delta_m" + s);
  }
  ph.validate();
  return ph;
}

}  // namespace omm
