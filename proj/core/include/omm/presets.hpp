#pragma once

#include "omm/engine.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace omm {

/// fig2a..fig2h, fig3, fig3-inset, fig4a..fig4d, fig5, fig6a..fig6d.
const std::vector<std::string>& preset_ids();

/// Sweep reproducing one figure panel. Baseline = ParameterSet::baseline(),
/// effective mode, algebraic Lyapunov policy. Throws ConfigError for an
/// unknown id.
SweepSpec figure_preset(std::string_view id);

/// Baseline config used by the presets.
Config preset_base_config();

}  // namespace omm
