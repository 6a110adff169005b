#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hybridnet {

// Thrown when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Thrown when a request exceeds what a transceiver architecture can do.
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, exact
inline constexpr double kThermalNoiseDensityDbmHz = -174.0;
inline constexpr double kPi = 3.14159265358979323846;

inline double to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double to_db(double linear) {
  if (linear <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(linear);
}

inline double dbm_to_mw(double dbm) { return to_linear(dbm); }
inline double mw_to_dbm(double mw) { return to_db(mw); }
inline double dbm_to_watts(double dbm) { return to_linear(dbm) * 1e-3; }
inline double watts_to_dbm(double watts) { return to_db(watts * 1e3); }

inline void require(bool condition, const std::string& what) {
  if (!condition) {
    throw DomainError(what);
  }
}

}  // namespace hybridnet
