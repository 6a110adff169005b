#pragma once

// Monte-Carlo driver. Each trial drops users, samples blockage, runs the
// allocation policy and handover machines, and evaluates every downlink.
// All three modes of a sweep point share one channel stream per trial index,
// so their curves are compared on identical geometry and blockage draws.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "hybridnet/band.hpp"
#include "hybridnet/network.hpp"
#include "hybridnet/policy.hpp"
#include "hybridnet/scenario.hpp"
#include "hybridnet/seeding.hpp"
#include "hybridnet/transceiver.hpp"

namespace hybridnet {

enum class Mode { VOnly, EOnly, Hybrid };

inline constexpr std::array<Mode, 3> kAllModes{Mode::VOnly, Mode::EOnly, Mode::Hybrid};

inline constexpr std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::VOnly:
      return "v";
    case Mode::EOnly:
      return "e";
    case Mode::Hybrid:
      return "hybrid";
  }
  return "unknown";
}

enum class SweepVariable { MeanDistance, InterfererCount };

struct SweepPoint {
  std::size_t index = 0;
  double value = 0.0;
};

struct SweepConfig {
  SweepVariable variable = SweepVariable::MeanDistance;
  std::vector<double> values;
  std::vector<Mode> modes{kAllModes.begin(), kAllModes.end()};

  void validate() const {
    require(!values.empty(), "sweep needs at least one value");
    require(!modes.empty(), "sweep needs at least one mode");
    for (std::size_t i = 0; i < values.size(); ++i) {
      require(std::isfinite(values[i]), "sweep values must be finite");
      if (i > 0) require(values[i] > values[i - 1], "sweep values must be strictly increasing");
      if (variable == SweepVariable::MeanDistance) {
        require(values[i] > 0.0, "swept distances must be positive");
      } else {
        require(values[i] >= 0.0 && values[i] == std::floor(values[i]),
                "swept interferer counts must be nonnegative integers");
      }
    }
  }

  static SweepConfig distance(const Scenario& s) {
    return {SweepVariable::MeanDistance, s.sweep.distances_m, {kAllModes.begin(), kAllModes.end()}};
  }
  static SweepConfig density(const Scenario& s) {
    return {SweepVariable::InterfererCount, s.sweep.interferer_counts,
            {kAllModes.begin(), kAllModes.end()}};
  }
};

// Stream tag for channel draws; shared by all modes.
inline constexpr std::uint64_t kChannelStream = 0x6368616e6e656cULL;  // "channel"

struct TraceSample {
  double time_s = 0.0;
  HandoverState state;
  double throughput_bps = 0.0;
};

struct UserOutcome {
  NodeId user = 0;
  NodeId serving = 0;
  double distance_m = 0.0;
  bool shadowed = false;
  std::optional<LinkClass> link_class;
  std::optional<HandoverEvent> event;
  LinkState link;
  Architecture architecture = Architecture::DualChain;
  int handovers = 0;
  double switching_time_s = 0.0;
  std::vector<TraceSample> trace;
};

struct TrialResult {
  std::vector<UserOutcome> users;

  double mean_throughput_bps() const {
    double sum = 0.0;
    for (const auto& u : users) sum += u.link.throughput_bps;
    return users.empty() ? 0.0 : sum / static_cast<double>(users.size());
  }
  double mean_handovers() const {
    double sum = 0.0;
    for (const auto& u : users) sum += u.handovers;
    return users.empty() ? 0.0 : sum / static_cast<double>(users.size());
  }
};

namespace detail {

struct TrialWorld {
  std::vector<Node> base_stations;
  std::vector<PlacedUser> users;
  std::vector<std::size_t> serving;      // per user, index into base_stations
  std::vector<std::vector<bool>> blocked;  // [user][bs]
  std::vector<PerBand<double>> pick;     // per BS: which assigned user it serves at the instant
};

inline TrialWorld build_world(const Scenario& scenario, SweepVariable variable, SweepPoint point,
                              std::size_t trial_index) {
  double mean_distance = scenario.sweep.density_distance_m;
  int extra_cells = scenario.interferers.count;
  if (variable == SweepVariable::MeanDistance) {
    mean_distance = point.value;
  } else {
    extra_cells = static_cast<int>(point.value);
  }

  Rng rng(derive_seed(scenario.master_seed, point.index, kChannelStream, trial_index));
  Deployment dep = scenario.deployment();
  const Position centre = dep.base_stations.front().position;
  for (int k = 0; k < extra_cells; ++k) {
    const double r = scenario.interferers.radius_m * std::sqrt(rng.uniform01());
    const double theta = rng.uniform(0.0, 2.0 * kPi);
    const Position where{centre.x + r * std::cos(theta), centre.y + r * std::sin(theta)};
    dep.base_stations.push_back(scenario.make_base_station(dep.base_stations.size(),
                                                           NodeRole::FemtoBS, where,
                                                           scenario.interferers.architecture,
                                                           BandSet::both()));
    dep.users_per_bs.push_back(1);
  }

  TrialWorld w;
  w.users = place_users(dep, mean_distance, rng.next_seed());
  w.base_stations = std::move(dep.base_stations);
  for (const auto& u : w.users) {
    w.serving.push_back(associate(w.base_stations, u.node.position, scenario.environment));
  }
  w.blocked.assign(w.users.size(), std::vector<bool>(w.base_stations.size(), false));
  for (auto& row : w.blocked) {
    for (std::size_t b = 0; b < row.size(); ++b) {
      row[b] = rng.bernoulli(scenario.environment.shadow_probability);
    }
  }
  w.pick.resize(w.base_stations.size());
  for (auto& p : w.pick) {
    p[Band::V] = rng.uniform01();
    p[Band::E] = rng.uniform01();
  }
  return w;
}

// Co-channel interferers seen by each user, given every user's band set.
inline std::vector<PerBand<std::vector<Interferer>>> interferers_for(
    const Scenario& scenario, const TrialWorld& w, const std::vector<BandSet>& assignment) {
  std::vector<PerBand<std::vector<Interferer>>> out(w.users.size());
  if (!scenario.interference_enabled) return out;
  const RadioEnvironment& env = scenario.environment;
  for (std::size_t j = 0; j < w.base_stations.size(); ++j) {
    const Node& bs = w.base_stations[j];
    for (Band band : kAllBands) {
      if (!bs.has_radio(band)) continue;
      std::vector<std::size_t> served;
      for (std::size_t u = 0; u < w.users.size(); ++u) {
        if (w.serving[u] == j && assignment[u].contains(band)) served.push_back(u);
      }
      if (served.empty()) continue;
      const std::size_t target = served[std::min(
          served.size() - 1,
          static_cast<std::size_t>(w.pick[j][band] * static_cast<double>(served.size())))];
      const RadioConfig& radio = *bs.radios[band];
      const SectorAntenna antenna =
          env.bs_antenna(radio, bearing_deg(bs.position, w.users[target].node.position));
      for (std::size_t u = 0; u < w.users.size(); ++u) {
        if (w.serving[u] == j) continue;
        out[u][band].push_back(Interferer{band, bs.position, radio.tx_power_dbm, radio.carrier,
                                          antenna, w.blocked[u][j], env.shadow_loss_db});
      }
    }
  }
  return out;
}

inline BandSet available_bands(const Node& bs) {
  BandSet s;
  for (Band b : kAllBands) {
    if (bs.has_radio(b)) s.insert(b);
  }
  return s;
}

}  // namespace detail

inline TrialResult run_trial(const Scenario& scenario, SweepVariable variable, SweepPoint point,
                             Mode mode, std::size_t trial_index) {
  const detail::TrialWorld w = detail::build_world(scenario, variable, point, trial_index);
  const RadioEnvironment& env = scenario.environment;
  const std::size_t n = w.users.size();

  auto link_of = [&](std::size_t u) {
    return ServingLink{&w.base_stations[w.serving[u]], w.users[u].node.id,
                       w.users[u].node.position};
  };

  // Band sets before the policy acts: the association band for Hybrid.
  std::vector<BandSet> initial(n);
  std::vector<BandSet> assignment(n);
  std::vector<std::optional<LinkClass>> classes(n);
  std::vector<std::optional<HandoverEvent>> events(n);
  std::vector<PerBand<double>> sounded_rate(n);

  if (mode == Mode::Hybrid) {
    std::vector<BandSet> sounding(n);
    for (std::size_t u = 0; u < n; ++u) sounding[u] = detail::available_bands(*link_of(u).base_station);
    const auto probe_interference = detail::interferers_for(scenario, w, sounding);
    for (std::size_t u = 0; u < n; ++u) {
      const ServingLink link = link_of(u);
      const Node& bs = *link.base_station;
      const bool blocked = w.blocked[u][w.serving[u]];
      PerBand<std::optional<double>> snr;
      PerBand<double> inr{{-std::numeric_limits<double>::infinity(),
                           -std::numeric_limits<double>::infinity()}};
      for (Band b : kAllBands) {
        if (!bs.has_radio(b)) continue;
        const BandMetrics m = measure_band(env, link, b, probe_interference[u][b], blocked);
        snr[b] = m.snr_db;
        inr[b] = m.inr_db;
        sounded_rate[u][b] = m.rate_bps;
      }
      const double density_inr = bs.has_radio(Band::V) ? inr[Band::V] : inr[Band::E];
      classes[u] = classify_link(snr, density_inr, scenario.thresholds);
      initial[u] = BandSet::only(bs.has_radio(Band::E) ? Band::E : Band::V);
      HandoverEvent target =
          target_bands(initial[u], *classes[u], bs.architecture, scenario.thresholds,
                       sounded_rate[u]);
      BandSet to = target.to.intersect(sounding[u]);
      if (to.empty()) to = initial[u];
      target.to = to;
      assignment[u] = to;
      if (!(to == initial[u])) events[u] = target;
    }
  } else {
    const BandSet forced = BandSet::only(mode == Mode::VOnly ? Band::V : Band::E);
    std::fill(initial.begin(), initial.end(), forced);
    std::fill(assignment.begin(), assignment.end(), forced);
  }

  // Equal airtime among a BS's users on each band.
  std::vector<PerBand<int>> load(w.base_stations.size());
  std::vector<int> cell_users(w.base_stations.size(), 0);
  for (std::size_t u = 0; u < n; ++u) {
    ++cell_users[w.serving[u]];
    for (Band b : kAllBands) {
      if (assignment[u].contains(b)) ++load[w.serving[u]][b];
    }
  }

  const auto interference = detail::interferers_for(scenario, w, assignment);
  TrialResult result;
  result.users.reserve(n);
  for (std::size_t u = 0; u < n; ++u) {
    const ServingLink link = link_of(u);
    const Node& bs = *link.base_station;
    const std::size_t j = w.serving[u];
    PerBand<double> share{{1.0, 1.0}};
    for (Band b : kAllBands) {
      if (load[j][b] > 0) share[b] = 1.0 / load[j][b];
    }

    UserOutcome out;
    out.user = link.user;
    out.serving = bs.id;
    out.distance_m = distance_between(bs.position, link.user_position);
    out.shadowed = w.blocked[u][j];
    out.link_class = classes[u];
    out.event = events[u];
    out.architecture = bs.architecture;
    out.link = compute_link_state(env, link, assignment[u], interference[u], out.shadowed, share);

    // Handover trace: the link starts live on its initial band set and
    // carries nothing while the transceiver resynchronizes.
    Transceiver trx(bs.architecture, scenario.handover, active_state(initial[u]));
    double initial_rate = 0.0;
    if (mode == Mode::Hybrid) {
      for (Band b : kAllBands) {
        if (initial[u].contains(b)) initial_rate += sounded_rate[u][b] / cell_users[j];
      }
    } else {
      initial_rate = out.link.throughput_bps;
    }
    out.trace.push_back({0.0, trx.state(), initial_rate});
    double t = 0.0;
    if (trx.request(assignment[u])) {
      while (is_switching(trx.state())) {
        out.trace.push_back({t, trx.state(), 0.0});
        trx.advance(scenario.trace_step_s);
        t += scenario.trace_step_s;
      }
      out.trace.push_back({t, trx.state(), out.link.throughput_bps});
    }
    out.handovers = trx.handovers();
    out.switching_time_s = trx.time_switching_s();
    result.users.push_back(std::move(out));
  }
  return result;
}

struct CurveRow {
  double sweep_value = 0.0;
  double mean_throughput_bps = 0.0;
  double ci95_bps = 0.0;
  double mean_handovers = 0.0;
  std::size_t trials = 0;
};

struct AggregateCurve {
  Mode mode = Mode::Hybrid;
  SweepVariable variable = SweepVariable::MeanDistance;
  std::vector<CurveRow> rows;
};

struct TrialSummary {
  double mean_throughput_bps = 0.0;
  double mean_handovers = 0.0;
};

// Mean and normal-approximation 95% half-width, accumulated in index order.
inline CurveRow summarize(double sweep_value, std::span<const TrialSummary> trials) {
  CurveRow row;
  row.sweep_value = sweep_value;
  row.trials = trials.size();
  if (trials.empty()) return row;
  const double count = static_cast<double>(trials.size());
  double sum = 0.0;
  double handovers = 0.0;
  for (const auto& t : trials) {
    sum += t.mean_throughput_bps;
    handovers += t.mean_handovers;
  }
  row.mean_throughput_bps = sum / count;
  row.mean_handovers = handovers / count;
  if (trials.size() > 1) {
    double ss = 0.0;
    for (const auto& t : trials) {
      const double d = t.mean_throughput_bps - row.mean_throughput_bps;
      ss += d * d;
    }
    row.ci95_bps = 1.96 * std::sqrt(ss / (count - 1.0) / count);
  }
  return row;
}

struct RunOptions {
  unsigned threads = 1;  // 0: one per hardware thread
};

// Curves are returned in the order of sweep.modes.
inline std::vector<AggregateCurve> run_sweep(const Scenario& scenario, const SweepConfig& sweep,
                                             RunOptions options = {}) {
  scenario.validate();
  sweep.validate();
  const std::size_t trials = static_cast<std::size_t>(scenario.trials);
  const std::size_t points = sweep.values.size();
  const std::size_t modes = sweep.modes.size();
  const std::size_t total = points * modes * trials;

  std::vector<TrialSummary> summaries(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t trial = task % trials;
      const std::size_t mode = (task / trials) % modes;
      const std::size_t point = task / (trials * modes);
      try {
        const TrialResult r = run_trial(scenario, sweep.variable, {point, sweep.values[point]},
                                        sweep.modes[mode], trial);
        summaries[task] = {r.mean_throughput_bps(), r.mean_handovers()};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                          : options.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<AggregateCurve> curves;
  for (std::size_t m = 0; m < modes; ++m) {
    AggregateCurve curve{sweep.modes[m], sweep.variable, {}};
    for (std::size_t p = 0; p < points; ++p) {
      const std::span<const TrialSummary> block(summaries.data() + (p * modes + m) * trials,
                                                trials);
      curve.rows.push_back(summarize(sweep.values[p], block));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

inline const AggregateCurve& curve_for(std::span<const AggregateCurve> curves, Mode mode) {
  for (const auto& c : curves) {
    if (c.mode == mode) return c;
  }
  throw DomainError("no curve for mode " + std::string(to_string(mode)));
}

}  // namespace hybridnet
