#pragma once

// Band handover state machines for the two transceiver architectures:
//  - SingleChain: one oscillator/amplifier chain retuned between bands, so at
//    most one band is live at any instant.
//  - DualChain: one chain per band, both bands may be live together, and a
//    live band can assist acquisition of the other.

#include <algorithm>
#include <string>
#include <type_traits>
#include <variant>

#include "hybridnet/band.hpp"
#include "hybridnet/units.hpp"

namespace hybridnet {

enum class Architecture { SingleChain, DualChain };

inline std::string_view to_string(Architecture arch) {
  return arch == Architecture::SingleChain ? "single" : "dual";
}

struct HandoverCostModel {
  double sync_delay_s = 0.010;
  double feedback_assisted_factor = 0.5;

  void validate() const {
    require(sync_delay_s >= 0.0, "sync delay must be nonnegative");
    require(feedback_assisted_factor > 0.0 && feedback_assisted_factor <= 1.0,
            "feedback-assisted factor must lie in (0, 1]");
  }
};

namespace fsm {

struct Idle {
  bool operator==(const Idle&) const = default;
};

// bands is never empty: {V} = ActiveV, {E} = ActiveE, {V,E} = ActiveDual.
struct Active {
  BandSet bands;
  bool operator==(const Active&) const = default;
};

struct Switching {
  BandSet target;
  double remaining_s;
  bool operator==(const Switching&) const = default;
};

}  // namespace fsm

using HandoverState = std::variant<fsm::Idle, fsm::Active, fsm::Switching>;

inline HandoverState active_state(BandSet bands) {
  require(!bands.empty(), "active state needs at least one band");
  return fsm::Active{bands};
}

inline bool is_switching(const HandoverState& s) {
  return std::holds_alternative<fsm::Switching>(s);
}

inline BandSet transmittable_bands(const HandoverState& state) {
  if (const auto* a = std::get_if<fsm::Active>(&state)) return a->bands;
  return BandSet::none();
}

inline std::string describe(const HandoverState& state) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, fsm::Idle>) {
          return "Idle";
        } else if constexpr (std::is_same_v<T, fsm::Active>) {
          if (s.bands.size() == 2) return "ActiveDual";
          return s.bands.contains(Band::V) ? "ActiveV" : "ActiveE";
        } else {
          return "Switching(" + s.target.str() + ", " + std::to_string(s.remaining_s) + " s)";
        }
      },
      state);
}

// Delay to acquire `target` from a state whose live bands are `live`.
inline double handover_delay(Architecture arch, BandSet live, BandSet target,
                             const HandoverCostModel& cost) {
  const bool keeps_band_live = !live.intersect(target).empty();
  if (arch == Architecture::DualChain && keeps_band_live) {
    return cost.sync_delay_s * cost.feedback_assisted_factor;
  }
  return cost.sync_delay_s;
}

inline HandoverState request_bands(const HandoverState& state, Architecture arch, BandSet target,
                                   const HandoverCostModel& cost) {
  cost.validate();
  require(!target.empty(), "handover target must name at least one band");
  if (arch == Architecture::SingleChain && target.size() > 1) {
    throw CapabilityError("single-chain transceiver cannot activate V and E simultaneously");
  }
  if (const auto* a = std::get_if<fsm::Active>(&state); a && a->bands == target) {
    return state;
  }
  if (const auto* s = std::get_if<fsm::Switching>(&state); s && s->target == target) {
    return state;
  }
  const double delay = handover_delay(arch, transmittable_bands(state), target, cost);
  if (delay <= 0.0) {
    return fsm::Active{target};
  }
  return fsm::Switching{target, delay};
}

inline HandoverState advance(const HandoverState& state, double dt_s) {
  require(dt_s >= 0.0, "time step must be nonnegative");
  if (const auto* s = std::get_if<fsm::Switching>(&state)) {
    const double remaining = s->remaining_s - dt_s;
    if (remaining <= 0.0) return fsm::Active{s->target};
    return fsm::Switching{s->target, remaining};
  }
  return state;
}

// One link endpoint pair's handover machine with bookkeeping.
class Transceiver {
 public:
  Transceiver(Architecture arch, HandoverCostModel cost, HandoverState initial = fsm::Idle{})
      : arch_(arch), cost_(cost), state_(initial) {
    cost_.validate();
    if (arch_ == Architecture::SingleChain && transmittable_bands(state_).size() > 1) {
      throw CapabilityError("single-chain transceiver cannot start dual-active");
    }
  }

  Architecture architecture() const { return arch_; }
  const HandoverState& state() const { return state_; }
  BandSet bands() const { return transmittable_bands(state_); }
  int handovers() const { return handovers_; }
  double time_switching_s() const { return switching_s_; }

  // Returns true when the request started a band change.
  bool request(BandSet target) {
    HandoverState next = request_bands(state_, arch_, target, cost_);
    const bool changed = !(next == state_);
    if (changed && !std::holds_alternative<fsm::Idle>(state_)) {
      ++handovers_;
    }
    state_ = next;
    return changed;
  }

  void advance(double dt_s) {
    if (const auto* s = std::get_if<fsm::Switching>(&state_)) {
      switching_s_ += std::min(dt_s, s->remaining_s);
    }
    state_ = hybridnet::advance(state_, dt_s);
  }

  // Remaining time until the machine is no longer switching.
  double time_to_steady_s() const {
    if (const auto* s = std::get_if<fsm::Switching>(&state_)) return s->remaining_s;
    return 0.0;
  }

 private:
  Architecture arch_;
  HandoverCostModel cost_;
  HandoverState state_;
  int handovers_ = 0;
  double switching_s_ = 0.0;
};

}  // namespace hybridnet
