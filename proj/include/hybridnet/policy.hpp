#pragma once

// Band allocation policy. Links are classified by best-band SNR and by
// interference-to-noise ratio (the in-model proxy for deployment density),
// then mapped onto the allocation matrix:
//
//                   | density High | density Low
//   SNR Low         |     {E}      |    {E}
//   SNR MediumHigh  |     {V}      |   {V, E}

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string_view>

#include "hybridnet/band.hpp"
#include "hybridnet/transceiver.hpp"
#include "hybridnet/units.hpp"

namespace hybridnet {

struct Thresholds {
  double snr_low_high_db = 10.0;
  double density_inr_db = 0.0;
  double hysteresis_db = 2.0;
  std::optional<double> demand_bps;

  void validate() const {
    require(std::isfinite(snr_low_high_db) && std::isfinite(density_inr_db),
            "policy thresholds must be finite");
    require(hysteresis_db >= 0.0 && std::isfinite(hysteresis_db),
            "hysteresis must be finite and nonnegative");
    require(!demand_bps || *demand_bps > 0.0, "throughput demand must be positive");
  }
};

enum class SnrClass { Low, MediumHigh };
enum class DensityClass { Low, High };

struct LinkClass {
  SnrClass snr;
  DensityClass density;
  bool operator==(const LinkClass&) const = default;
};

enum class AllocationReason { LowSnrFallbackToE, HighDensityUseV, LowDensityUseBoth };

inline std::string_view to_string(AllocationReason reason) {
  switch (reason) {
    case AllocationReason::LowSnrFallbackToE:
      return "low_snr_fallback_to_e";
    case AllocationReason::HighDensityUseV:
      return "high_density_use_v";
    case AllocationReason::LowDensityUseBoth:
      return "low_density_use_both";
  }
  return "unknown";
}

struct AllocationDecision {
  BandSet bands;
  AllocationReason reason;
};

struct HandoverEvent {
  BandSet from;
  BandSet to;
  AllocationReason reason;
  bool down_selected = false;  // {V,E} target reduced to a single band
};

namespace detail {

// true when `value` clears `boundary` with hysteresis relative to the
// previous side of the boundary.
inline bool above_with_hysteresis(double value, double boundary, double hysteresis,
                                  std::optional<bool> previously_above) {
  double effective = boundary;
  if (previously_above) effective += *previously_above ? -hysteresis : hysteresis;
  return value >= effective;
}

}  // namespace detail

// Bands without a measurement carry nullopt; at least one must be present.
inline LinkClass classify_link(const PerBand<std::optional<double>>& snr_db, double inr_db,
                               const Thresholds& thresholds,
                               std::optional<LinkClass> previous = std::nullopt) {
  thresholds.validate();
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (Band b : kAllBands) {
    if (snr_db[b]) {
      require(!std::isnan(*snr_db[b]), "SNR measurement must not be NaN");
      best = std::max(best, *snr_db[b]);
      any = true;
    }
  }
  require(any, "classification needs at least one SNR measurement");
  require(!std::isnan(inr_db), "INR measurement must not be NaN");

  std::optional<bool> was_high_snr;
  std::optional<bool> was_dense;
  if (previous) {
    was_high_snr = previous->snr == SnrClass::MediumHigh;
    was_dense = previous->density == DensityClass::High;
  }
  const bool high_snr = detail::above_with_hysteresis(best, thresholds.snr_low_high_db,
                                                      thresholds.hysteresis_db, was_high_snr);
  const bool dense = detail::above_with_hysteresis(inr_db, thresholds.density_inr_db,
                                                   thresholds.hysteresis_db, was_dense);
  return {high_snr ? SnrClass::MediumHigh : SnrClass::Low,
          dense ? DensityClass::High : DensityClass::Low};
}

inline LinkClass classify_link(double snr_db, double inr_db, const Thresholds& thresholds,
                               std::optional<LinkClass> previous = std::nullopt) {
  PerBand<std::optional<double>> snr;
  snr[Band::V] = snr_db;
  return classify_link(snr, inr_db, thresholds, previous);
}

inline AllocationDecision allocate_band(LinkClass cls) {
  if (cls.snr == SnrClass::Low) {
    return {BandSet::only(Band::E), AllocationReason::LowSnrFallbackToE};
  }
  if (cls.density == DensityClass::High) {
    return {BandSet::only(Band::V), AllocationReason::HighDensityUseV};
  }
  return {BandSet::both(), AllocationReason::LowDensityUseBoth};
}

// Higher predicted rate wins; ties go to E.
inline Band better_single_band(const PerBand<double>& predicted_bps) {
  return predicted_bps[Band::V] > predicted_bps[Band::E] ? Band::V : Band::E;
}

// Target band set for a link given its class, architecture and predicted
// per-band rates, before comparing with the current set.
inline HandoverEvent target_bands(BandSet current, LinkClass cls, Architecture arch,
                                  const Thresholds& thresholds,
                                  const PerBand<double>& predicted_bps) {
  const AllocationDecision decision = allocate_band(cls);
  HandoverEvent event{current, decision.bands, decision.reason, false};
  if (decision.bands.size() == 2) {
    const Band best = better_single_band(predicted_bps);
    const bool demand_met =
        thresholds.demand_bps && predicted_bps[best] >= *thresholds.demand_bps;
    if (arch == Architecture::SingleChain || demand_met) {
      event.to = BandSet::only(best);
      event.down_selected = true;
    }
  }
  return event;
}

inline std::optional<HandoverEvent> evaluate_triggers(BandSet current, LinkClass cls,
                                                      Architecture arch,
                                                      const Thresholds& thresholds,
                                                      const PerBand<double>& predicted_bps) {
  HandoverEvent event = target_bands(current, cls, arch, thresholds, predicted_bps);
  if (event.to == current) return std::nullopt;
  return event;
}

}  // namespace hybridnet
