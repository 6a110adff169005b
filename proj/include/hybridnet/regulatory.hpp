#pragma once

// FCC-style V/E band rules and the validator that checks radio
// configurations against them. Violations are reported as data.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hybridnet/band.hpp"
#include "hybridnet/propagation.hpp"

namespace hybridnet {

struct FrequencyRange {
  double low_ghz;
  double high_ghz;

  bool contains(double ghz) const { return ghz >= low_ghz && ghz <= high_ghz; }
  bool contains(double lo, double hi) const { return lo >= low_ghz && hi <= high_ghz; }
};

struct RegulatoryRule {
  Band band = Band::V;
  std::vector<FrequencyRange> freq_ranges;
  bool licensed = false;
  double max_tx_power_dbm = 0.0;
  std::optional<double> min_antenna_gain_dbi;  // nullopt: not applicable
  double max_bandwidth_hz = 0.0;
};

class RuleSet {
 public:
  RuleSet(RegulatoryRule v, RegulatoryRule e) {
    require(v.band == Band::V && e.band == Band::E, "rule set needs one V and one E rule");
    rules_[Band::V] = std::move(v);
    rules_[Band::E] = std::move(e);
  }

  static RuleSet fcc() {
    RegulatoryRule v{Band::V, {{57.0, 64.0}}, false, 27.0, std::nullopt, 7e9};
    RegulatoryRule e{Band::E, {{71.0, 76.0}, {81.0, 86.0}, {92.0, 95.0}}, true, 35.0, 43.0, 5e9};
    return RuleSet(std::move(v), std::move(e));
  }

  const RegulatoryRule& rule(Band b) const { return rules_[b]; }
  RegulatoryRule& rule(Band b) { return rules_[b]; }

  // Band whose regulated ranges contain the frequency, or nullopt for a gap.
  std::optional<Band> band_of(FrequencyHz freq) const {
    for (Band b : kAllBands) {
      for (const auto& r : rules_[b].freq_ranges) {
        if (r.contains(freq.in_ghz())) return b;
      }
    }
    return std::nullopt;
  }

 private:
  PerBand<RegulatoryRule> rules_;
};

struct RadioConfig {
  Band band = Band::V;
  FrequencyHz carrier = FrequencyHz(60e9);
  double bandwidth_hz = 5e9;
  double tx_power_dbm = 27.0;
  double antenna_gain_dbi = 15.0;
};

enum class ViolationKind {
  CarrierOutsideBand,
  BandwidthExceeded,
  MaxTxPowerExceeded,
  MinAntennaGain,
};

inline std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::CarrierOutsideBand:
      return "carrier outside regulated range";
    case ViolationKind::BandwidthExceeded:
      return "bandwidth exceeded";
    case ViolationKind::MaxTxPowerExceeded:
      return "max transmit power exceeded";
    case ViolationKind::MinAntennaGain:
      return "minimum antenna gain";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  Band band;
  double value;
  double limit;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  std::vector<std::string> waivers;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    for (const auto& v : violations) {
      if (v.kind == kind) return true;
    }
    return false;
  }
};

inline ValidationReport validate_radio_config(const RadioConfig& config, const RuleSet& rules,
                                              bool enforce_min_gain) {
  ValidationReport report;
  const RegulatoryRule& rule = rules.rule(config.band);
  const std::string band{to_string(config.band)};
  auto add = [&](ViolationKind kind, double value, double limit, const std::string& detail) {
    report.violations.push_back({kind, config.band, value, limit, detail});
  };

  const double half_ghz = config.bandwidth_hz * 0.5e-9;
  const double lo = config.carrier.in_ghz() - half_ghz;
  const double hi = config.carrier.in_ghz() + half_ghz;
  bool fits = false;
  for (const auto& r : rule.freq_ranges) {
    fits = fits || r.contains(lo, hi);
  }
  if (!(config.bandwidth_hz > 0.0) || !fits) {
    std::ostringstream msg;
    msg << band << "-band channel " << lo << "-" << hi
        << " GHz does not fit one contiguous regulated range";
    add(ViolationKind::CarrierOutsideBand, config.carrier.in_ghz(), 0.0, msg.str());
  }
  if (config.bandwidth_hz > rule.max_bandwidth_hz) {
    std::ostringstream msg;
    msg << band << "-band bandwidth " << config.bandwidth_hz << " Hz exceeds "
        << rule.max_bandwidth_hz << " Hz";
    add(ViolationKind::BandwidthExceeded, config.bandwidth_hz, rule.max_bandwidth_hz, msg.str());
  }
  if (config.tx_power_dbm > rule.max_tx_power_dbm) {
    std::ostringstream msg;
    msg << band << "-band transmit power " << config.tx_power_dbm << " dBm exceeds limit "
        << rule.max_tx_power_dbm << " dBm";
    add(ViolationKind::MaxTxPowerExceeded, config.tx_power_dbm, rule.max_tx_power_dbm, msg.str());
  }
  if (rule.min_antenna_gain_dbi && config.antenna_gain_dbi < *rule.min_antenna_gain_dbi) {
    std::ostringstream msg;
    msg << band << "-band antenna gain " << config.antenna_gain_dbi << " dBi below minimum "
        << *rule.min_antenna_gain_dbi << " dBi";
    if (enforce_min_gain) {
      add(ViolationKind::MinAntennaGain, config.antenna_gain_dbi, *rule.min_antenna_gain_dbi,
          msg.str());
    } else {
      report.waivers.push_back(msg.str() + " (waived)");
    }
  }
  return report;
}

inline double eirp_dbm(const RadioConfig& config) {
  return config.tx_power_dbm + config.antenna_gain_dbi;
}

}  // namespace hybridnet
