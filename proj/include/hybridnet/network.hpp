#pragma once

// Two-tier deployment geometry, sector antennas, co-channel interference and
// per-link SNR/SINR/throughput.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hybridnet/band.hpp"
#include "hybridnet/propagation.hpp"
#include "hybridnet/regulatory.hpp"
#include "hybridnet/seeding.hpp"
#include "hybridnet/transceiver.hpp"
#include "hybridnet/units.hpp"

namespace hybridnet {

using NodeId = std::size_t;

// Interference paths shorter than this are evaluated at this distance.
inline constexpr double kMinPathDistanceM = 1.0;

struct Position {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Position&) const = default;
};

inline double distance_between(Position a, Position b) { return std::hypot(b.x - a.x, b.y - a.y); }

// Bearing from `from` to `to`, degrees counter-clockwise from +x, in (-180, 180].
inline double bearing_deg(Position from, Position to) {
  return std::atan2(to.y - from.y, to.x - from.x) * 180.0 / kPi;
}

// Smallest absolute difference between two angles, in [0, 180].
inline double angular_separation_deg(double a, double b) {
  double d = std::fmod(a - b, 360.0);
  if (d < 0.0) d += 360.0;
  return d > 180.0 ? 360.0 - d : d;
}

enum class NodeRole { MacroBS, PicoBS, FemtoBS, User };

inline std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::MacroBS:
      return "macro";
    case NodeRole::PicoBS:
      return "pico";
    case NodeRole::FemtoBS:
      return "femto";
    case NodeRole::User:
      return "user";
  }
  return "unknown";
}

struct Node {
  NodeId id = 0;
  NodeRole role = NodeRole::User;
  Position position;
  PerBand<std::optional<RadioConfig>> radios;
  Architecture architecture = Architecture::DualChain;

  bool is_base_station() const { return role != NodeRole::User; }
  bool has_radio(Band b) const { return radios[b].has_value(); }
};

// Flat-top two-level sector pattern.
struct SectorAntenna {
  double mainlobe_gain_dbi = 15.0;
  double sidelobe_gain_dbi = -10.0;
  double beamwidth_deg = 20.0;
  double boresight_deg = 0.0;

  void validate() const {
    require(mainlobe_gain_dbi > sidelobe_gain_dbi, "mainlobe gain must exceed sidelobe gain");
    require(beamwidth_deg > 0.0 && beamwidth_deg <= 360.0, "beamwidth must lie in (0, 360]");
  }

  SectorAntenna pointed_at(double boresight) const {
    SectorAntenna a = *this;
    a.boresight_deg = boresight;
    return a;
  }
};

inline double directional_gain(const SectorAntenna& antenna, double angle_deg) {
  return angular_separation_deg(angle_deg, antenna.boresight_deg) <= antenna.beamwidth_deg / 2.0
             ? antenna.mainlobe_gain_dbi
             : antenna.sidelobe_gain_dbi;
}

// Propagation settings shared by every link of a scenario.
struct RadioEnvironment {
  AttenuationTable attenuation = AttenuationTable::standard();
  double noise_figure_db = 7.0;
  double terminal_gain_dbi = 15.0;  // user-side mainlobe
  double sidelobe_gain_dbi = -10.0;
  double beamwidth_deg = 20.0;
  double shadow_loss_db = 10.0;
  double shadow_probability = 0.2;

  SectorAntenna bs_antenna(const RadioConfig& radio, double boresight_deg) const {
    return {radio.antenna_gain_dbi, sidelobe_gain_dbi, beamwidth_deg, boresight_deg};
  }
  SectorAntenna terminal_antenna(double boresight_deg) const {
    return {terminal_gain_dbi, sidelobe_gain_dbi, beamwidth_deg, boresight_deg};
  }
};

struct Interferer {
  Band band = Band::V;
  Position position;
  double tx_power_dbm = 0.0;
  FrequencyHz carrier = FrequencyHz(60e9);
  SectorAntenna antenna;  // pointed at the interferer's own user
  bool shadowed = false;  // blockage on the path to the victim
  double shadow_loss_db = 0.0;
};

struct Victim {
  Position position;
  SectorAntenna antenna;  // pointed at the victim's serving BS
};

// Received power of a single interferer at the victim, dBm.
inline double interferer_power_dbm(const Victim& victim, const Interferer& source,
                                   const AttenuationTable& table) {
  const double d = std::max(distance_between(source.position, victim.position), kMinPathDistanceM);
  LinkBudget budget;
  budget.tx_power_dbm = source.tx_power_dbm;
  budget.tx_gain_dbi =
      directional_gain(source.antenna, bearing_deg(source.position, victim.position));
  budget.rx_gain_dbi =
      directional_gain(victim.antenna, bearing_deg(victim.position, source.position));
  budget.freq = source.carrier;
  budget.geometry = {d, source.shadowed, source.shadow_loss_db};
  return received_power(budget, table);
}

// Aggregate co-channel interference, summed in linear milliwatts. An empty
// interferer list yields -inf dBm.
inline double interference_power(const Victim& victim, std::span<const Interferer> co_channel,
                                 Band band, const AttenuationTable& table) {
  double total_mw = 0.0;
  for (const Interferer& source : co_channel) {
    require(source.band == band, "interferer is not active on the victim's band");
    total_mw += dbm_to_mw(interferer_power_dbm(victim, source, table));
  }
  return mw_to_dbm(total_mw);
}

struct BandMetrics {
  double signal_dbm = 0.0;
  double noise_dbm = 0.0;
  double snr_db = 0.0;
  double interference_dbm = -std::numeric_limits<double>::infinity();
  double inr_db = -std::numeric_limits<double>::infinity();
  double sinr_db = 0.0;
  double bandwidth_hz = 0.0;
  double rate_bps = 0.0;       // full-airtime Shannon rate
  double airtime_share = 1.0;  // fraction of the band's airtime given to this user
};

struct LinkState {
  NodeId serving = 0;
  NodeId user = 0;
  BandSet band_assignment;
  PerBand<std::optional<BandMetrics>> bands;
  double throughput_bps = 0.0;
};

// A BS-to-user downlink before any band decision.
struct ServingLink {
  const Node* base_station = nullptr;
  NodeId user = 0;
  Position user_position;
};

inline BandMetrics measure_band(const RadioEnvironment& env, const ServingLink& link, Band band,
                                std::span<const Interferer> interferers, bool shadowed,
                                double airtime_share = 1.0) {
  const Node& bs = *link.base_station;
  if (!bs.has_radio(band)) {
    std::ostringstream msg;
    msg << "base station " << bs.id << " has no " << to_string(band) << "-band radio";
    throw CapabilityError(msg.str());
  }
  require(airtime_share > 0.0 && airtime_share <= 1.0, "airtime share must lie in (0, 1]");
  const RadioConfig& radio = *bs.radios[band];

  LinkBudget budget;
  budget.tx_power_dbm = radio.tx_power_dbm;
  budget.tx_gain_dbi = radio.antenna_gain_dbi;
  budget.rx_gain_dbi = env.terminal_gain_dbi;
  budget.freq = radio.carrier;
  budget.geometry = {distance_between(bs.position, link.user_position), shadowed,
                     env.shadow_loss_db};

  BandMetrics m;
  m.signal_dbm = received_power(budget, env.attenuation);
  m.noise_dbm = noise_power(radio.bandwidth_hz, env.noise_figure_db);
  m.snr_db = m.signal_dbm - m.noise_dbm;
  const Victim victim{link.user_position,
                      env.terminal_antenna(bearing_deg(link.user_position, bs.position))};
  m.interference_dbm = interference_power(victim, interferers, band, env.attenuation);
  m.inr_db = m.interference_dbm - m.noise_dbm;
  m.sinr_db = m.signal_dbm - mw_to_dbm(dbm_to_mw(m.noise_dbm) + dbm_to_mw(m.interference_dbm));
  m.bandwidth_hz = radio.bandwidth_hz;
  m.rate_bps = shannon_throughput(m.sinr_db, radio.bandwidth_hz);
  m.airtime_share = airtime_share;
  return m;
}

inline void check_assignment(const Node& bs, BandSet assignment) {
  if (assignment.empty()) throw DomainError("band assignment must not be empty");
  if (bs.architecture == Architecture::SingleChain && assignment.size() > 1) {
    throw CapabilityError("single-chain transceiver cannot serve V and E simultaneously");
  }
  for (Band b : kAllBands) {
    if (assignment.contains(b) && !bs.has_radio(b)) {
      std::ostringstream msg;
      msg << "base station " << bs.id << " has no " << to_string(b) << "-band radio";
      throw CapabilityError(msg.str());
    }
  }
}

inline LinkState compute_link_state(const RadioEnvironment& env, const ServingLink& link,
                                    BandSet assignment,
                                    const PerBand<std::vector<Interferer>>& interferers,
                                    bool shadowed,
                                    const PerBand<double>& airtime_share = {{1.0, 1.0}}) {
  check_assignment(*link.base_station, assignment);
  LinkState state;
  state.serving = link.base_station->id;
  state.user = link.user;
  state.band_assignment = assignment;
  for (Band b : kAllBands) {
    if (!assignment.contains(b)) continue;
    BandMetrics m = measure_band(env, link, b, interferers[b], shadowed, airtime_share[b]);
    state.throughput_bps += m.rate_bps * m.airtime_share;
    state.bands[b] = m;
  }
  return state;
}

// Seeded variant: the blockage state of the serving path is a Bernoulli draw
// with the environment's shadowing probability.
inline LinkState compute_link_state(const RadioEnvironment& env, const ServingLink& link,
                                    BandSet assignment,
                                    const PerBand<std::vector<Interferer>>& interferers,
                                    std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  return compute_link_state(env, link, assignment, interferers,
                            rng.bernoulli(env.shadow_probability));
}

// Base stations plus how many users each one anchors.
struct Deployment {
  std::vector<Node> base_stations;
  std::vector<int> users_per_bs;

  std::size_t user_count() const {
    std::size_t n = 0;
    for (int u : users_per_bs) n += static_cast<std::size_t>(u);
    return n;
  }
};

struct PlacedUser {
  Node node;
  std::size_t anchor = 0;  // index into Deployment::base_stations
  double distance_m = 0.0;
};

// Users are dropped around their anchor BS at distances uniform in
// [0.5, 1.5] x mean and uniform bearings. User ids follow the BS ids.
inline std::vector<PlacedUser> place_users(const Deployment& deployment, double mean_distance_m,
                                           std::uint64_t rng_seed) {
  require(mean_distance_m > 0.0 && std::isfinite(mean_distance_m),
          "mean user distance must be positive");
  require(deployment.users_per_bs.size() == deployment.base_stations.size(),
          "users_per_bs must have one entry per base station");
  require(deployment.user_count() >= 1, "deployment needs at least one user");
  Rng rng(rng_seed);
  std::vector<PlacedUser> users;
  users.reserve(deployment.user_count());
  NodeId next_id = deployment.base_stations.size();
  for (std::size_t b = 0; b < deployment.base_stations.size(); ++b) {
    const Position centre = deployment.base_stations[b].position;
    for (int k = 0; k < deployment.users_per_bs[b]; ++k) {
      const double d = rng.uniform(0.5 * mean_distance_m, 1.5 * mean_distance_m);
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      PlacedUser u;
      u.node.id = next_id++;
      u.node.role = NodeRole::User;
      u.node.position = {centre.x + d * std::cos(theta), centre.y + d * std::sin(theta)};
      u.anchor = b;
      u.distance_m = d;
      users.push_back(u);
    }
  }
  return users;
}

// Serving BS index: highest unshadowed E-band received power (V-band when a
// BS has no E radio). Ties keep the lower index.
inline std::size_t associate(std::span<const Node> base_stations, Position user,
                             const RadioEnvironment& env) {
  require(!base_stations.empty(), "no base station to associate with");
  std::size_t best = 0;
  double best_dbm = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < base_stations.size(); ++i) {
    const Node& bs = base_stations[i];
    const Band band = bs.has_radio(Band::E) ? Band::E : Band::V;
    if (!bs.has_radio(band)) continue;
    const RadioConfig& radio = *bs.radios[band];
    LinkBudget budget;
    budget.tx_power_dbm = radio.tx_power_dbm;
    budget.tx_gain_dbi = radio.antenna_gain_dbi;
    budget.rx_gain_dbi = env.terminal_gain_dbi;
    budget.freq = radio.carrier;
    budget.geometry = {std::max(distance_between(bs.position, user), kMinPathDistanceM), false,
                       0.0};
    const double p = received_power(budget, env.attenuation);
    if (p > best_dbm) {
      best_dbm = p;
      best = i;
    }
  }
  return best;
}

}  // namespace hybridnet
