#pragma once

#include "omm/engine.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace omm {

struct CsvOptions {
  /// Emit a "# generated_utc" line; off for byte-reproducible output.
  bool timestamp = true;
};

/// Shortest round-trip decimal form; "nan" / "inf" / "-inf" otherwise.
std::string format_number(double v);

/// EN_<pair>..., S_<a>_to_<b>, S_<b>_to_<a> per pair..., SN_<pair>...
std::vector<std::string> measure_columns(std::span<const ModePair> pairs);

/// "# key = value" lines echoing mode, policies, every parameter and the axes.
void write_metadata(std::ostream& out, const SweepSpec& spec, std::string_view kind,
                    const CsvOptions& options);

/// Metadata for `config`, the header line and a single row.
void write_point_csv(std::ostream& out, const Config& config, const PointResult& result,
                     const CsvOptions& options = {});

/// Metadata, one header line, one row per grid point. Unavailable measures
/// print as nan; `stable` is 1 or 0.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, std::span<const SweepRow> rows,
                     const CsvOptions& options = {});

/// Columns: x[, y], spectral_abscissa (rad/s), stable.
void write_stability_csv(std::ostream& out, const SweepSpec& spec,
                         std::span<const StabilityRow> rows, const CsvOptions& options = {});

}  // namespace omm
