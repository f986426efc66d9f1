#include "omm/presets.hpp"

#include "omm/errors.hpp"

#include <numbers>

namespace omm {
namespace {

// Axis ranges are read off the published plots; they are estimates, not
// quoted values.
struct PresetDef {
  const char* id;
  Axis axis;
  std::vector<std::pair<const char*, double>> overrides;
};

const std::vector<PresetDef>& definitions() {
  static const std::vector<PresetDef> defs = [] {
    const Axis delta_c{"delta_c", 20e6, 60e6, 201, AxisScale::linear};
    const Axis delta_m1{"delta_m1", -60e6, -20e6, 201, AxisScale::linear};
    const Axis delta_m2{"delta_m2", -60e6, -20e6, 201, AxisScale::linear};
    const Axis temperature{"T_kelvin", 0.0, 0.8, 161, AxisScale::linear};
    const Axis g0{"G0", 0.5e6, 6e6, 221, AxisScale::linear};
    const Axis phi{"Phi_rad", 0.0, 3.1, 156, AxisScale::linear};
    const Axis gm1{"G_m1", 0.1e6, 3e6, 146, AxisScale::linear};
    const Axis gm2{"G_m2", 0.1e6, 3e6, 146, AxisScale::linear};
    const Axis gm{"G_m", 0.1e6, 2.9e6, 141, AxisScale::linear};
    const Axis gb1{"gamma_b1", 1e2, 1e6, 201, AxisScale::log};
    const Axis gb2{"gamma_b2", 1e2, 1e6, 201, AxisScale::log};
    return std::vector<PresetDef>{
        {"fig2a", delta_c, {}},
        {"fig2b", delta_m1, {}},
        {"fig2c", delta_m2, {}},
        {"fig2d", temperature, {}},
        {"fig2e", delta_c, {}},
        {"fig2f", delta_m1, {}},
        {"fig2g", delta_m2, {}},
        {"fig2h", temperature, {}},
        {"fig3", g0, {}},
        {"fig3-inset", phi, {{"G0_tilde", 4e6}}},
        // One coupling swept, the other held at 2 MHz.
        {"fig4a", gm1, {{"G_m2", 2e6}}},
        {"fig4b", gm2, {{"G_m1", 2e6}}},
        {"fig4c", gm1, {{"G_m2", 2e6}}},
        {"fig4d", gm2, {{"G_m1", 2e6}}},
        {"fig5", gm, {}},
        {"fig6a", gb1, {}},
        {"fig6b", gb2, {}},
        {"fig6c", gb1, {}},
        {"fig6d", gb2, {}},
    };
  }();
  return defs;
}

}  // namespace

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& d : definitions()) out.emplace_back(d.id);
    return out;
  }();
  return ids;
}

Config preset_base_config() {
  Config c;
  c.mode = ParameterMode::effective;
  c.lyapunov = LyapunovPolicy::algebraic;
  c.drift = DriftConvention::appendix;
  return c;
}

SweepSpec figure_preset(std::string_view id) {
  for (const auto& d : definitions()) {
    if (id != d.id) continue;
    SweepSpec spec;
    spec.base = preset_base_config();
    for (const auto& [key, value] : d.overrides) spec.base.params.set(key, value);
    spec.x = d.axis;
    spec.pairs = default_pairs();
    spec.preset = d.id;
    return spec;
  }
  throw Error(ErrorCode::ConfigError, "unknown figure preset '" + std::string(id) + "'");
}

}  // namespace omm
