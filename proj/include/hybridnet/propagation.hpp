#pragma once

// Radio-physics primitives for line-of-sight millimeter-wave links: spreading
// loss, gaseous absorption, human-body shadowing, thermal noise and the
// Shannon rate map. Everything here is a pure function of its arguments.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hybridnet/units.hpp"

namespace hybridnet {

inline constexpr double kMinCarrierHz = 57e9;
inline constexpr double kMaxCarrierHz = 95e9;

// Carrier frequency restricted to the union of the regulated V/E ranges'
// envelope, 57-95 GHz.
class FrequencyHz {
 public:
  explicit FrequencyHz(double hz) : hz_(hz) {
    if (!(hz >= kMinCarrierHz && hz <= kMaxCarrierHz)) {
      std::ostringstream msg;
      msg << "carrier " << hz << " Hz outside [57e9, 95e9]";
      throw DomainError(msg.str());
    }
  }

  static FrequencyHz ghz(double value) { return FrequencyHz(value * 1e9); }

  double hz() const { return hz_; }
  double in_ghz() const { return hz_ / 1e9; }

  auto operator<=>(const FrequencyHz&) const = default;

 private:
  double hz_;
};

// Piecewise-linear specific attenuation (dB/km) versus frequency.
class AttenuationTable {
 public:
  struct Anchor {
    double freq_ghz;
    double db_per_km;
  };

  explicit AttenuationTable(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {
    require(anchors_.size() >= 2, "attenuation table needs at least two anchors");
    for (std::size_t i = 0; i < anchors_.size(); ++i) {
      require(std::isfinite(anchors_[i].freq_ghz) && std::isfinite(anchors_[i].db_per_km),
              "attenuation anchors must be finite");
      require(anchors_[i].db_per_km >= 0.0, "attenuation values must be nonnegative");
      if (i > 0) {
        require(anchors_[i].freq_ghz > anchors_[i - 1].freq_ghz,
                "attenuation anchors must be strictly increasing in frequency");
      }
    }
  }

  // Coarse digitization of the sea-level absorption curve: oxygen peak at
  // 60 GHz, flat valley across the E-band segments.
  static AttenuationTable standard() {
    return AttenuationTable({{57.0, 8.0},
                             {60.0, 15.0},
                             {64.0, 8.0},
                             {66.0, 1.5},
                             {71.0, 0.45},
                             {76.0, 0.4},
                             {81.0, 0.4},
                             {86.0, 0.45},
                             {92.0, 0.5},
                             {95.0, 0.6}});
  }

  const std::vector<Anchor>& anchors() const { return anchors_; }
  double min_ghz() const { return anchors_.front().freq_ghz; }
  double max_ghz() const { return anchors_.back().freq_ghz; }

  double db_per_km(double freq_ghz) const {
    if (!(freq_ghz >= min_ghz() && freq_ghz <= max_ghz())) {
      std::ostringstream msg;
      msg << "frequency " << freq_ghz << " GHz outside attenuation table [" << min_ghz() << ", "
          << max_ghz() << "]";
      throw DomainError(msg.str());
    }
    auto upper = std::lower_bound(anchors_.begin(), anchors_.end(), freq_ghz,
                                  [](const Anchor& a, double f) { return a.freq_ghz < f; });
    if (upper->freq_ghz == freq_ghz) {
      return upper->db_per_km;
    }
    const Anchor& hi = *upper;
    const Anchor& lo = *(upper - 1);
    const double t = (freq_ghz - lo.freq_ghz) / (hi.freq_ghz - lo.freq_ghz);
    return lo.db_per_km + t * (hi.db_per_km - lo.db_per_km);
  }

 private:
  std::vector<Anchor> anchors_;
};

struct LinkGeometry {
  double distance_m = 1.0;
  bool shadowed = false;
  double shadow_loss_db = 10.0;

  void validate() const {
    require(distance_m > 0.0, "link distance must be positive");
    require(shadow_loss_db >= 0.0, "shadow loss must be nonnegative");
  }

  double shadowing_db() const { return shadowed ? shadow_loss_db : 0.0; }
};

struct LinkBudget {
  double tx_power_dbm = 0.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
  FrequencyHz freq = FrequencyHz(60e9);
  LinkGeometry geometry;
};

// Friis spreading loss, 20 log10(4 pi d f / c).
inline double free_space_path_loss(FrequencyHz freq, double distance_m) {
  require(distance_m > 0.0, "free-space path loss needs a positive distance");
  return 20.0 * std::log10(4.0 * kPi * distance_m * freq.hz() / kSpeedOfLight);
}

// dB/km
inline double atmospheric_attenuation(const AttenuationTable& table, FrequencyHz freq) {
  return table.db_per_km(freq.in_ghz());
}

inline double received_power(const LinkBudget& budget, const AttenuationTable& table) {
  budget.geometry.validate();
  const double d = budget.geometry.distance_m;
  return budget.tx_power_dbm + budget.tx_gain_dbi + budget.rx_gain_dbi -
         free_space_path_loss(budget.freq, d) -
         atmospheric_attenuation(table, budget.freq) * (d / 1000.0) -
         budget.geometry.shadowing_db();
}

inline double noise_power(double bandwidth_hz, double noise_figure_db) {
  require(bandwidth_hz > 0.0, "noise bandwidth must be positive");
  require(noise_figure_db >= 0.0, "noise figure must be nonnegative");
  return kThermalNoiseDensityDbmHz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

// bits/s. A SINR of -inf dB (no signal) maps to zero.
inline double shannon_throughput(double sinr_db, double bandwidth_hz) {
  require(bandwidth_hz > 0.0, "throughput bandwidth must be positive");
  require(!std::isnan(sinr_db), "SINR must not be NaN");
  return bandwidth_hz * std::log2(1.0 + to_linear(sinr_db));
}

}  // namespace hybridnet
