#include "omm/layout.hpp"

namespace omm {

std::string_view mode_name(Mode m) noexcept {
  switch (m) {
    case Mode::c: return "c";
    case Mode::m1: return "m1";
    case Mode::b1: return "b1";
    case Mode::m2: return "m2";
    case Mode::b2: return "b2";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  for (Mode m : kAllModes) {
    if (mode_name(m) == name) return m;
  }
  return std::nullopt;
}

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

Eigen::MatrixXd arm_swap_permutation() {
  std::array<Mode, kModeCount> image = {Mode::c, Mode::m2, Mode::b2, Mode::m1, Mode::b1};
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(kQuadratureCount, kQuadratureCount);
  for (int k = 0; k < kModeCount; ++k) {
    const int from = 2 * k;
    const int to = offset(image[k]);
    p(to, from) = 1.0;
    p(to + 1, from + 1) = 1.0;
  }
  return p;
}

}  // namespace omm
