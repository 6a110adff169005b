#pragma once

// Test-only reference computations. These deliberately avoid the library's
// code paths: the Friis loss is evaluated through the wavelength form, the
// absorption curve by a linear scan, and interference by a direct sum.

#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

constexpr double kC = 299792458.0;
constexpr double kPi = 3.14159265358979323846;

inline double friis_loss_db(double freq_hz, double distance_m) {
  const double wavelength = kC / freq_hz;
  const double ratio = wavelength / (4.0 * kPi * distance_m);
  return -10.0 * std::log10(ratio * ratio);
}

inline double interp_scan(const std::vector<std::pair<double, double>>& pts, double x) {
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [x0, y0] = pts[i];
    const auto [x1, y1] = pts[i + 1];
    if (x >= x0 && x <= x1) return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  }
  return NAN;
}

inline double gain_two_level(double main, double side, double beamwidth, double boresight,
                             double angle) {
  double d = std::fabs(angle - boresight);
  while (d > 360.0) d -= 360.0;
  if (d > 180.0) d = 360.0 - d;
  return d <= beamwidth / 2.0 ? main : side;
}

inline double deg(double x0, double y0, double x1, double y1) {
  return std::atan2(y1 - y0, x1 - x0) * 180.0 / kPi;
}

}  // namespace oracle
