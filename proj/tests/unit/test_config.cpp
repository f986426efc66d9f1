#include "omm/config.hpp"
#include "omm/errors.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace omm {
namespace {

Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test");
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Config, BaselineValues) {
  const ParameterSet p = ParameterSet::baseline();
  EXPECT_EQ(p.get("omega_b1"), 40e6);
  EXPECT_EQ(p.get("kappa_c"), 2e6);
  EXPECT_EQ(p.get("kappa_m2"), 1e6);
  EXPECT_EQ(p.get("gamma_b2"), 100.0);
  EXPECT_EQ(p.get("delta_c"), 40e6);
  EXPECT_EQ(p.get("delta_m1"), -40e6);
  EXPECT_EQ(p.get("G0"), 3e6);
  EXPECT_EQ(p.get("G_m1"), 2e6);
  EXPECT_EQ(p.get("G_m2"), 1e6);
  EXPECT_EQ(p.get("T_kelvin"), 0.01);
  EXPECT_EQ(p.get("P_L_W"), 6.67e-3);
  EXPECT_EQ(p.get("V_m3"), 1e-17);
}

TEST(Config, ParsesKeysAndOptions) {
  const Config c = parse(
      "# comment\n"
      "mode = physical\n"
      "drift_convention = eq9\n"
      "lyapunov = algebraic\n"
      "steady_state = approximate\n"
      "kerr_K_hz = 1e-3\n"
      "validity_margin = 0.2\n"
      "  G0 = 1.5e6   # trailing comment\n"
      "\n"
      "T_kelvin=0.3\n");
  EXPECT_EQ(c.mode, ParameterMode::physical);
  EXPECT_EQ(c.drift, DriftConvention::eq9);
  EXPECT_EQ(c.lyapunov, LyapunovPolicy::algebraic);
  EXPECT_EQ(c.steady_state, SteadyStateMode::approximate);
  EXPECT_EQ(c.kerr_hz, 1e-3);
  EXPECT_EQ(c.validity_margin, 0.2);
  EXPECT_EQ(c.params.get("G0"), 1.5e6);
  EXPECT_EQ(c.params.get("T_kelvin"), 0.3);
  EXPECT_EQ(c.params.get("G_m1"), 2e6);
}

TEST(Config, CompositeKey) {
  const Config c = parse("G_m = 0.5e6\n");
  EXPECT_EQ(c.params.get("G_m1"), 0.5e6);
  EXPECT_EQ(c.params.get("G_m2"), 0.5e6);
}

TEST(Config, Errors) {
  expect_config_error("nonsense = 1\n", "nonsense");
  expect_config_error("G0 = abc\n", "test:1");
  expect_config_error("G0\n", "test:1");
  expect_config_error("G0 = 1\nmode = sideways\n", "test:2");
  expect_config_error("G0 = nan\n", "G0");
  expect_config_error("lyapunov = lax\n", "lyapunov");
}

TEST(Config, EffectiveConversion) {
  Config c;
  const EffectiveParams e = effective_from_config(c);
  EXPECT_NEAR(e.G0, constants::two_pi * 3e6, 1e-6);
  EXPECT_NEAR(e.arm[0].n_b, 4.72, 0.01);
  EXPECT_LT(e.n_c, 1e-100);
  c.params.set("G0_tilde", 4e6);
  c.params.set("Phi_rad", 0.0);
  EXPECT_NEAR(effective_from_config(c).G0, constants::two_pi * 4e6, 1e-6);
}

TEST(Config, MissingFile) {
  try {
    load_config("/nonexistent/omm.conf");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(Config, EnumRoundTrip) {
  for (auto m : {ParameterMode::effective, ParameterMode::physical})
    EXPECT_EQ(parse_parameter_mode(to_string(m)), m);
  for (auto p : {LyapunovPolicy::strict, LyapunovPolicy::algebraic})
    EXPECT_EQ(parse_lyapunov_policy(to_string(p)), p);
  for (auto d : {DriftConvention::appendix, DriftConvention::eq9})
    EXPECT_EQ(parse_drift_convention(to_string(d)), d);
  for (auto s : {SteadyStateMode::exact, SteadyStateMode::approximate})
    EXPECT_EQ(parse_steady_state_mode(to_string(s)), s);
}

}  // namespace
}  // namespace omm
