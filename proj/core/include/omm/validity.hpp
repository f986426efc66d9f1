#pragma once

#include "omm/model.hpp"

#include <array>

namespace omm {

inline constexpr double kDefaultValidityMargin = 0.1;

/// Kerr coefficient of a 1 mm diameter YIG sphere, K/2pi = 0.1 nHz (rad/s).
inline constexpr double kKerrOneMillimetreSphere = constants::two_pi * 0.1e-9;

/// Default Kerr coefficient for a sample of `volume` m^3: the 1 mm sphere
/// value scaled inversely with volume.
double default_kerr_coefficient(double volume);

struct MagnonNumberCheck {
  double ratio = 0.0;  ///< |m_s|^2 / (5 N0)
  bool pass = false;   ///< ratio < margin
};

/// Magnon excitation number against 2 N0 s = 5 N0 (s = 5/2 for Fe3+).
MagnonNumberCheck check_magnon_number(const SteadyState& s, int arm, double spin_count,
                                      double margin = kDefaultValidityMargin);

struct KerrCheck {
  double coefficient = 0.0;  ///< K used (rad/s)
  double critical = 0.0;     ///< Omega / |m_s|^3
  double maximum = 0.0;      ///< margin * Omega / |m_s|^3
  bool pass = false;         ///< K |m_s|^3 < margin * Omega
};

KerrCheck check_kerr(const SteadyState& s, int arm, double rabi, double kerr,
                     double margin = kDefaultValidityMargin);

struct ValidityReport {
  double margin = kDefaultValidityMargin;
  std::array<MagnonNumberCheck, 2> magnon_number{};
  std::array<KerrCheck, 2> kerr{};

  bool pass() const {
    return magnon_number[0].pass && magnon_number[1].pass && kerr[0].pass && kerr[1].pass;
  }
};

ValidityReport check_validity(const SteadyState& s, const DriveAmplitudes& drive, double kerr,
                              double margin = kDefaultValidityMargin);

}  // namespace omm
