#include "omm/omm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace omm;

enum Exit { kOk = 0, kConfig = 1, kNotStable = 2, kIo = 3, kNumerical = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidParameter:
    case ErrorCode::NonPositiveFrequency:
    case ErrorCode::SameMode:
      return kConfig;
    case ErrorCode::NotStable:
      return kNotStable;
    case ErrorCode::IoError:
      return kIo;
    default:
      return kNumerical;
  }
}

struct Common {
  std::string config_path;
  std::string out_path;
  std::string pairs;
  std::string mode;
  std::string lyapunov;
  std::string drift;
  std::vector<std::string> overrides;
  bool no_timestamp = false;
  int threads = 0;
};

struct AxisArgs {
  std::string param;
  std::string range;
  bool log = false;
  std::string param2;
  std::string range2;
  bool log2 = false;
};

void add_common(CLI::App* app, Common& c, bool csv) {
  app->add_option("--config", c.config_path, "key = value config file (Hz units)");
  app->add_option("--set", c.overrides, "override a parameter, key=value (repeatable)");
  app->add_option("--pairs", c.pairs, "comma separated pairs, e.g. c-m1,c-m2,m1-m2");
  app->add_option("--mode", c.mode, "effective | physical");
  app->add_option("--lyapunov", c.lyapunov, "strict | algebraic");
  app->add_option("--drift-convention", c.drift, "appendix | eq9");
  app->add_option("--out", c.out_path, csv ? "CSV output path (stdout if omitted)"
                                           : "optional CSV output path");
  app->add_flag("--no-timestamp", c.no_timestamp, "omit the generated_utc metadata line");
}

void add_threads(CLI::App* app, Common& c) {
  app->add_option("--threads", c.threads, "worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);
}

void add_axes(CLI::App* app, AxisArgs& a) {
  app->add_option("--param", a.param, "swept key")->required();
  app->add_option("--range", a.range, "start:stop:points")->required();
  app->add_flag("--log", a.log, "logarithmic spacing for the first axis");
  app->add_option("--param2", a.param2, "second swept key");
  app->add_option("--range2", a.range2, "start:stop:points for the second axis");
  app->add_flag("--log2", a.log2, "logarithmic spacing for the second axis");
}

double parse_double(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ConfigError, "bad number '" + std::string(text) + "' in " +
                                            std::string(what));
  }
  return v;
}

Axis parse_axis(const std::string& key, const std::string& range, bool log) {
  std::vector<std::string> parts;
  std::stringstream ss(range);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 3) throw Error(ErrorCode::ConfigError, "range must be start:stop:points");
  Axis a;
  a.key = key;
  a.start = parse_double(parts[0], "range");
  a.stop = parse_double(parts[1], "range");
  const double n = parse_double(parts[2], "range");
  if (n != std::floor(n) || n < 0 || n > 1e7) {
    throw Error(ErrorCode::ConfigError, "range points must be a non-negative integer");
  }
  a.points = static_cast<int>(n);
  a.scale = log ? AxisScale::log : AxisScale::linear;
  a.validate();
  return a;
}

std::vector<ModePair> parse_pairs(const std::string& text) {
  if (text.empty()) return default_pairs();
  std::vector<ModePair> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto p = parse_pair(item);
    if (!p) throw Error(ErrorCode::ConfigError, "unknown pair '" + item + "'");
    out.push_back(*p);
  }
  if (out.empty()) throw Error(ErrorCode::ConfigError, "no pairs requested");
  return out;
}

void apply_common(Config& cfg, const Common& c) {
  if (!c.mode.empty()) {
    const auto m = parse_parameter_mode(c.mode);
    if (!m) throw Error(ErrorCode::ConfigError, "unknown mode '" + c.mode + "'");
    cfg.mode = *m;
  }
  if (!c.lyapunov.empty()) {
    const auto p = parse_lyapunov_policy(c.lyapunov);
    if (!p) throw Error(ErrorCode::ConfigError, "unknown lyapunov policy '" + c.lyapunov + "'");
    cfg.lyapunov = *p;
  }
  if (!c.drift.empty()) {
    const auto d = parse_drift_convention(c.drift);
    if (!d) throw Error(ErrorCode::ConfigError, "unknown drift convention '" + c.drift + "'");
    cfg.drift = *d;
  }
  for (const std::string& kv : c.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "--set expects key=value");
    cfg.params.set(kv.substr(0, eq), parse_double(kv.substr(eq + 1), kv));
  }
}

Config base_config(const Common& c) {
  Config cfg = c.config_path.empty() ? Config{} : load_config(c.config_path);
  apply_common(cfg, c);
  return cfg;
}

int thread_count(const Common& c) {
  if (c.threads > 0) return c.threads;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

template <class Fn>
void with_output(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

void print_validity(std::ostream& out, const Config& cfg, const PointResult& r) {
  if (!r.drive || !r.steady_state || !r.validity) return;
  out << "spin_count = " << format_number(r.drive->spin_count) << '\n';
  out << "cavity_drive_rad_s = " << format_number(r.drive->cavity_drive) << '\n';
  for (int j = 0; j < 2; ++j) {
    out << "rabi_m" << j + 1 << "_rad_s = " << format_number(r.drive->rabi[j]) << '\n';
  }
  out << "steady_state_iterations = " << r.steady_state->iterations << '\n';
  out << "cavity_amplitude = " << format_number(std::abs(r.steady_state->alpha)) << '\n';
  for (int j = 0; j < 2; ++j) {
    out << "magnon_amplitude_m" << j + 1 << " = "
        << format_number(std::abs(r.steady_state->magnon[j])) << '\n';
  }
  out << "phase_warning = " << (r.phase_warning ? 1 : 0) << '\n';
  const ValidityReport& v = *r.validity;
  out << "validity_margin = " << format_number(v.margin) << '\n';
  if (!cfg.kerr_hz) {
    out << "kerr_assumption = 1 mm sphere K/2pi = 0.1 nHz scaled by inverse volume\n";
  }
  for (int j = 0; j < 2; ++j) {
    const std::string m = "m" + std::to_string(j + 1);
    out << "magnon_number_ratio_" << m << " = " << format_number(v.magnon_number[j].ratio)
        << (v.magnon_number[j].pass ? " pass" : " FAIL") << '\n';
    out << "kerr_" << m << " K/2pi = " << format_number(v.kerr[j].coefficient / constants::two_pi)
        << " Hz, critical/2pi = " << format_number(v.kerr[j].critical / constants::two_pi)
        << " Hz" << (v.kerr[j].pass ? " pass" : " FAIL") << '\n';
  }
  out << "validity = " << (v.pass() ? "pass" : "FAIL") << '\n';
}

int cmd_point(const Common& c) {
  const Config cfg = base_config(c);
  const std::vector<ModePair> pairs = parse_pairs(c.pairs);
  const PointResult r = evaluate_point(cfg, pairs);

  std::cout << "mode = " << to_string(cfg.mode) << '\n';
  std::cout << "lyapunov = " << to_string(cfg.lyapunov) << '\n';
  std::cout << "drift_convention = " << to_string(cfg.drift) << '\n';
  std::cout << "stable = " << (r.stability.stable ? 1 : 0) << '\n';
  std::cout << "spectral_abscissa_rad_s = " << format_number(r.stability.spectral_abscissa)
            << '\n';
  std::cout << "lyapunov_residual = " << format_number(r.residual) << '\n';
  if (r.covariance) std::cout << "physical = " << (r.physical ? 1 : 0) << '\n';
  for (const MeasureReport& m : r.measures) {
    const std::string a(mode_name(m.pair.a));
    const std::string b(mode_name(m.pair.b));
    std::cout << "pair " << m.pair.label() << ": EN = " << format_number(m.log_negativity)
              << ", S_" << a << "_to_" << b << " = " << format_number(m.steering.a_to_b)
              << ", S_" << b << "_to_" << a << " = " << format_number(m.steering.b_to_a)
              << ", SN = " << format_number(m.steering.asymmetry) << '\n';
  }
  print_validity(std::cout, cfg, r);

  if (!c.out_path.empty()) {
    with_output(c.out_path, [&](std::ostream& out) {
      write_point_csv(out, cfg, r, CsvOptions{!c.no_timestamp});
    });
  }
  if (cfg.lyapunov == LyapunovPolicy::strict && !r.stability.stable) {
    std::cerr << "omm: NotStable: spectral abscissa "
              << format_number(r.stability.spectral_abscissa) << " rad/s\n";
    return kNotStable;
  }
  if (!r.failure.empty()) {
    std::cerr << "omm: " << r.failure << '\n';
    return kNumerical;
  }
  return kOk;
}

SweepSpec sweep_spec(const Common& c, const AxisArgs& a) {
  SweepSpec spec;
  spec.base = base_config(c);
  spec.x = parse_axis(a.param, a.range, a.log);
  if (!a.param2.empty() || !a.range2.empty()) {
    if (a.param2.empty() || a.range2.empty()) {
      throw Error(ErrorCode::ConfigError, "--param2 and --range2 go together");
    }
    spec.y = parse_axis(a.param2, a.range2, a.log2);
  }
  spec.pairs = parse_pairs(c.pairs);
  spec.validate();
  return spec;
}

int cmd_sweep(const Common& c, const AxisArgs& a) {
  const SweepSpec spec = sweep_spec(c, a);
  const auto rows = run_sweep(spec, thread_count(c));
  with_output(c.out_path, [&](std::ostream& out) {
    write_sweep_csv(out, spec, rows, CsvOptions{!c.no_timestamp});
  });
  return kOk;
}

int cmd_stability_map(const Common& c, const AxisArgs& a) {
  const SweepSpec spec = sweep_spec(c, a);
  const auto rows = stability_map(spec, thread_count(c));
  with_output(c.out_path, [&](std::ostream& out) {
    write_stability_csv(out, spec, rows, CsvOptions{!c.no_timestamp});
  });
  return kOk;
}

int cmd_figure(const Common& c, const std::string& id, bool list) {
  if (list) {
    for (const std::string& p : preset_ids()) {
      const SweepSpec s = figure_preset(p);
      std::cout << p << "  " << s.x.key << ' ' << format_number(s.x.start) << " .. "
                << format_number(s.x.stop) << " (" << s.x.points
                << (s.x.scale == AxisScale::log ? " points, log)" : " points)") << '\n';
    }
    return kOk;
  }
  if (id.empty()) throw Error(ErrorCode::ConfigError, "figure needs a preset id or --list");
  SweepSpec spec = figure_preset(id);
  if (!c.config_path.empty()) {
    throw Error(ErrorCode::ConfigError, "figure presets use the built-in baseline; use sweep");
  }
  apply_common(spec.base, c);
  if (!c.pairs.empty()) spec.pairs = parse_pairs(c.pairs);
  const auto rows = run_sweep(spec, thread_count(c));
  with_output(c.out_path, [&](std::ostream& out) {
    write_sweep_csv(out, spec, rows, CsvOptions{!c.no_timestamp});
  });
  return kOk;
}

int cmd_validate(const Common& c, std::optional<double> kerr_hz, std::optional<double> margin) {
  Config cfg = base_config(c);
  cfg.mode = ParameterMode::physical;
  if (kerr_hz) cfg.kerr_hz = kerr_hz;
  if (margin) {
    if (!(*margin > 0.0)) throw Error(ErrorCode::ConfigError, "margin must be positive");
    cfg.validity_margin = *margin;
  }
  std::optional<SteadyState> steady;
  std::optional<DriveAmplitudes> drive;
  bool warning = false;
  const EffectiveParams e = resolve_effective(cfg, &steady, &drive, &warning);
  PointResult r;
  r.steady_state = steady;
  r.drive = drive;
  r.phase_warning = warning;
  r.validity = check_validity(*steady, *drive, kerr_coefficient(cfg), cfg.validity_margin);
  std::cout << "G0/2pi = " << format_number(e.G0 / constants::two_pi) << " Hz\n";
  for (int j = 0; j < 2; ++j) {
    std::cout << "G_m" << j + 1 << "/2pi = " << format_number(e.arm[j].G_m / constants::two_pi)
              << " Hz\n";
  }
  std::cout << "delta_c/2pi = " << format_number(e.delta_c / constants::two_pi) << " Hz\n";
  print_validity(std::cout, cfg, r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and steering in an optomagnomechanical ring"};
  app.require_subcommand(1);

  Common common;
  AxisArgs axes;
  std::string preset;
  bool list = false;
  std::optional<double> kerr_hz;
  std::optional<double> margin;

  auto* point = app.add_subcommand("point", "evaluate one parameter point");
  add_common(point, common, false);

  auto* sweep = app.add_subcommand("sweep", "1D or 2D parameter sweep to CSV");
  add_common(sweep, common, true);
  add_threads(sweep, common);
  add_axes(sweep, axes);

  auto* figure = app.add_subcommand("figure", "run a figure preset to CSV");
  add_common(figure, common, true);
  add_threads(figure, common);
  figure->add_option("preset", preset, "preset id");
  figure->add_flag("--list", list, "list preset ids");

  auto* smap = app.add_subcommand("stability-map", "spectral abscissa over a grid to CSV");
  add_common(smap, common, true);
  add_threads(smap, common);
  add_axes(smap, axes);

  auto* validate = app.add_subcommand("validate", "drive amplitudes and validity checks");
  add_common(validate, common, false);
  validate->add_option("--kerr-hz", kerr_hz, "Kerr coefficient K/2pi in Hz");
  validate->add_option("--margin", margin, "validity margin for the '<<' checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*point) return cmd_point(common);
    if (*sweep) return cmd_sweep(common, axes);
    if (*figure) return cmd_figure(common, preset, list);
    if (*smap) return cmd_stability_map(common, axes);
    if (*validate) return cmd_validate(common, kerr_hz, margin);
  } catch (const Error& e) {
    std::cerr << "omm: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "omm: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
