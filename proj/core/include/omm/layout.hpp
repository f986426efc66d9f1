#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <string_view>

namespace omm {

/// Modes of the ring in quadrature-vector order. Each mode owns the
/// contiguous index pair (2k, 2k+1): (I, J) for cavity and magnons, (q, p)
/// for phonons.
enum class Mode : int { c = 0, m1 = 1, b1 = 2, m2 = 3, b2 = 4 };

inline constexpr int kModeCount = 5;
inline constexpr int kQuadratureCount = 2 * kModeCount;

inline constexpr std::array<Mode, kModeCount> kAllModes = {Mode::c, Mode::m1, Mode::b1,
                                                           Mode::m2, Mode::b2};

constexpr int offset(Mode m) noexcept { return 2 * static_cast<int>(m); }

std::string_view mode_name(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

/// Magnon/phonon modes of arm j (0 or 1).
constexpr Mode magnon_of(int arm) noexcept { return arm == 0 ? Mode::m1 : Mode::m2; }
constexpr Mode phonon_of(int arm) noexcept { return arm == 0 ? Mode::b1 : Mode::b2; }

/// Block-diagonal symplectic form with 2x2 blocks [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(int modes);

/// Permutation matrix P exchanging (m1, b1) with (m2, b2); P * v relabels.
Eigen::MatrixXd arm_swap_permutation();

}  // namespace omm
