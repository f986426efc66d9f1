#include "omm/csv.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

namespace omm {
namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

std::string axis_text(const Axis& a) {
  return a.key + " " + (a.scale == AxisScale::linear ? "linear " : "log ") +
         format_number(a.start) + " " + format_number(a.stop) + " " + std::to_string(a.points);
}

void write_axes_header(std::ostream& out, const SweepSpec& spec) {
  out << spec.x.key;
  if (spec.y) out << ',' << spec.y->key;
}

void write_coords(std::ostream& out, double x, const std::optional<double>& y) {
  out << format_number(x);
  if (y) out << ',' << format_number(*y);
}

void write_validity_metadata(std::ostream& out, const Config& base) {
  try {
    std::optional<SteadyState> steady;
    std::optional<DriveAmplitudes> drive;
    resolve_effective(base, &steady, &drive);
    const double kerr = kerr_coefficient(base);
    const ValidityReport v = check_validity(*steady, *drive, kerr, base.validity_margin);
    out << "# validity margin = " << format_number(v.margin)
        << (base.kerr_hz ? "" : " (Kerr K scaled from 1 mm sphere by inverse volume)") << '\n';
    for (int j = 0; j < 2; ++j) {
      out << "# validity m" << j + 1 << " number_ratio = " << format_number(v.magnon_number[j].ratio)
          << (v.magnon_number[j].pass ? " pass" : " FAIL") << '\n';
      out << "# validity m" << j + 1 << " kerr_K_rad_s = " << format_number(v.kerr[j].coefficient)
          << " critical = " << format_number(v.kerr[j].critical)
          << (v.kerr[j].pass ? " pass" : " FAIL") << '\n';
    }
  } catch (const std::exception& e) {
    out << "# validity unavailable: " << e.what() << '\n';
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return ec == std::errc() ? std::string(buf.data(), ptr) : std::string("nan");
}

std::vector<std::string> measure_columns(std::span<const ModePair> pairs) {
  std::vector<std::string> cols;
  for (const ModePair& p : pairs) cols.push_back("EN_" + p.column_label());
  for (const ModePair& p : pairs) {
    const std::string a(mode_name(p.a));
    const std::string b(mode_name(p.b));
    cols.push_back("S_" + a + "_to_" + b);
    cols.push_back("S_" + b + "_to_" + a);
  }
  for (const ModePair& p : pairs) cols.push_back("SN_" + p.column_label());
  return cols;
}

namespace {

void write_config_metadata(std::ostream& out, const Config& base, std::string_view kind,
                           std::string_view preset, const CsvOptions& options) {
  out << "# omm " << kind << '\n';
  if (options.timestamp) out << "# generated_utc = " << utc_now() << '\n';
  if (!preset.empty()) out << "# preset = " << preset << '\n';
  out << "# mode = " << to_string(base.mode) << '\n';
  out << "# lyapunov = " << to_string(base.lyapunov) << '\n';
  out << "# drift_convention = " << to_string(base.drift) << '\n';
  if (base.mode == ParameterMode::physical) {
    out << "# steady_state = " << to_string(base.steady_state) << '\n';
  }
  out << "# units = Hz for rates and frequencies, K for T_kelvin, rad for Phi_rad\n";
  for (const auto& [key, value] : base.params.values()) {
    out << "# param " << key << " = " << format_number(value) << '\n';
  }
  if (base.mode == ParameterMode::physical) write_validity_metadata(out, base);
}

}  // namespace

void write_metadata(std::ostream& out, const SweepSpec& spec, std::string_view kind,
                    const CsvOptions& options) {
  write_config_metadata(out, spec.base, kind, spec.preset, options);
  out << "# axis x = " << axis_text(spec.x) << '\n';
  if (spec.y) out << "# axis y = " << axis_text(*spec.y) << '\n';
}

void write_point_csv(std::ostream& out, const Config& config, const PointResult& result,
                     const CsvOptions& options) {
  write_config_metadata(out, config, "point", "", options);
  std::vector<ModePair> pairs;
  for (const MeasureReport& m : result.measures) pairs.push_back(m.pair);
  bool first = true;
  for (const std::string& c : measure_columns(pairs)) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << (first ? "" : ",") << "stable\n";
  const auto& m = result.measures;
  for (const auto& r : m) out << format_number(r.log_negativity) << ',';
  for (const auto& r : m) {
    out << format_number(r.steering.a_to_b) << ',' << format_number(r.steering.b_to_a) << ',';
  }
  for (const auto& r : m) out << format_number(r.steering.asymmetry) << ',';
  out << (result.stability.stable ? 1 : 0) << '\n';
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, std::span<const SweepRow> rows,
                     const CsvOptions& options) {
  write_metadata(out, spec, "sweep", options);
  std::size_t unphysical = 0;
  for (const SweepRow& row : rows) {
    if (row.result.covariance && !row.result.physical) ++unphysical;
  }
  out << "# unphysical_points = " << unphysical << '\n';
  write_axes_header(out, spec);
  for (const std::string& c : measure_columns(spec.pairs)) out << ',' << c;
  out << ",stable\n";
  for (const SweepRow& row : rows) {
    write_coords(out, row.x, row.y);
    const auto& m = row.result.measures;
    for (const auto& r : m) out << ',' << format_number(r.log_negativity);
    for (const auto& r : m) {
      out << ',' << format_number(r.steering.a_to_b) << ',' << format_number(r.steering.b_to_a);
    }
    for (const auto& r : m) out << ',' << format_number(r.steering.asymmetry);
    out << ',' << (row.result.stability.stable ? 1 : 0) << '\n';
  }
}

void write_stability_csv(std::ostream& out, const SweepSpec& spec,
                         std::span<const StabilityRow> rows, const CsvOptions& options) {
  write_metadata(out, spec, "stability-map", options);
  write_axes_header(out, spec);
  out << ",spectral_abscissa,stable\n";
  for (const StabilityRow& row : rows) {
    write_coords(out, row.x, row.y);
    out << ',' << format_number(row.spectral_abscissa) << ',' << (row.stable ? 1 : 0) << '\n';
  }
}

}  // namespace omm
