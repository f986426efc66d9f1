#include "omm/validity.hpp"

#include "omm/errors.hpp"

#include <cmath>
#include <limits>

namespace omm {

double default_kerr_coefficient(double volume) {
  if (!(volume > 0.0)) throw Error(ErrorCode::InvalidParameter, "volume must be > 0");
  constexpr double radius = 0.5e-3;
  const double sphere = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
  return kKerrOneMillimetreSphere * sphere / volume;
}

MagnonNumberCheck check_magnon_number(const SteadyState& s, int arm, double spin_count,
                                      double margin) {
  if (!(spin_count > 0.0)) throw Error(ErrorCode::InvalidParameter, "spin count must be > 0");
  MagnonNumberCheck c;
  c.ratio = std::norm(s.magnon.at(arm)) / (5.0 * spin_count);
  c.pass = c.ratio < margin;
  return c;
}

KerrCheck check_kerr(const SteadyState& s, int arm, double rabi, double kerr, double margin) {
  if (!(kerr >= 0.0)) throw Error(ErrorCode::InvalidParameter, "Kerr coefficient must be >= 0");
  const double amp = std::abs(s.magnon.at(arm));
  const double cube = amp * amp * amp;
  KerrCheck c;
  c.coefficient = kerr;
  c.critical = cube > 0.0 ? rabi / cube : std::numeric_limits<double>::infinity();
  c.maximum = margin * c.critical;
  c.pass = kerr * cube < margin * rabi || kerr == 0.0;
  return c;
}

ValidityReport check_validity(const SteadyState& s, const DriveAmplitudes& drive, double kerr,
                              double margin) {
  ValidityReport r;
  r.margin = margin;
  for (int j = 0; j < 2; ++j) {
    r.magnon_number[j] = check_magnon_number(s, j, drive.spin_count, margin);
    r.kerr[j] = check_kerr(s, j, drive.rabi[j], kerr, margin);
  }
  return r;
}

}  // namespace omm
