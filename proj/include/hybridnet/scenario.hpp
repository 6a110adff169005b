#pragma once

// Scenario description and its line-oriented `key = value` file format.
//
//   # comment
//   trials = 500
//   radio.v.tx_power_dbm = 27
//   bs.femto.x_m = 200
//
// Unknown keys, duplicate keys and malformed values are errors that name the
// line and key. Omitted keys keep their defaults, so an empty file is the
// reference two-tier scenario.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridnet/band.hpp"
#include "hybridnet/network.hpp"
#include "hybridnet/policy.hpp"
#include "hybridnet/propagation.hpp"
#include "hybridnet/regulatory.hpp"
#include "hybridnet/transceiver.hpp"

namespace hybridnet {

class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(int line, std::string key, const std::string& message)
      : std::runtime_error(format(line, key, message)), line_(line), key_(std::move(key)) {}

  int line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  static std::string format(int line, const std::string& key, const std::string& message) {
    std::ostringstream out;
    if (line > 0) out << "line " << line << ": ";
    if (!key.empty()) out << "key '" << key << "': ";
    out << message;
    return out.str();
  }

  int line_;
  std::string key_;
};

// Raised when the radio configuration breaks a regulatory rule.
class RegulatoryError : public std::runtime_error {
 public:
  RegulatoryError(const std::string& message, ValidationReport report)
      : std::runtime_error(message), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

struct BaseStationSpec {
  std::string name;
  NodeRole role = NodeRole::FemtoBS;
  Position position;
  Architecture architecture = Architecture::DualChain;
  int users = 0;
  BandSet bands = BandSet::both();
};

// Extra single-user cells dropped uniformly in a disk around the first BS to
// raise co-channel density.
struct InterfererTier {
  int count = 0;
  double radius_m = 50.0;
  Architecture architecture = Architecture::DualChain;
};

inline std::vector<double> log_spaced(double lo, double hi, int points) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    v.push_back(lo * std::pow(hi / lo, t));
  }
  return v;
}

struct SweepDefaults {
  std::vector<double> distances_m = log_spaced(10.0, 500.0, 15);
  std::vector<double> interferer_counts = {0, 2, 4, 8, 16, 32, 64, 128};
  double density_distance_m = 25.0;  // mean user distance during a density sweep
};

struct Scenario {
  std::vector<BaseStationSpec> base_stations = {
      {"macro", NodeRole::MacroBS, {0.0, 0.0}, Architecture::DualChain, 5, BandSet::both()},
      {"femto", NodeRole::FemtoBS, {200.0, 0.0}, Architecture::DualChain, 5, BandSet::both()},
  };
  PerBand<RadioConfig> radios{{
      RadioConfig{Band::V, FrequencyHz(60e9), 5e9, 27.0, 15.0},
      RadioConfig{Band::E, FrequencyHz(73.5e9), 5e9, 35.0, 15.0},
  }};
  RadioEnvironment environment;
  RuleSet rules = RuleSet::fcc();
  bool enforce_min_gain = false;
  bool interference_enabled = true;
  InterfererTier interferers;
  Thresholds thresholds;
  HandoverCostModel handover;
  double trace_step_s = 0.001;
  int trials = 500;
  std::uint64_t master_seed = 1;
  SweepDefaults sweep;

  std::size_t user_count() const {
    std::size_t n = 0;
    for (const auto& bs : base_stations) n += static_cast<std::size_t>(bs.users);
    return n;
  }

  Node make_base_station(NodeId id, NodeRole role, Position where, Architecture arch,
                         BandSet bands) const {
    Node n;
    n.id = id;
    n.role = role;
    n.position = where;
    n.architecture = arch;
    for (Band b : kAllBands) {
      if (bands.contains(b)) n.radios[b] = radios[b];
    }
    return n;
  }

  // Configured base stations; ids are their indices.
  Deployment deployment() const {
    Deployment d;
    for (const auto& spec : base_stations) {
      d.base_stations.push_back(make_base_station(d.base_stations.size(), spec.role,
                                                  spec.position, spec.architecture, spec.bands));
      d.users_per_bs.push_back(spec.users);
    }
    return d;
  }

  ValidationReport regulatory_report() const {
    ValidationReport all;
    for (Band b : kAllBands) {
      ValidationReport r = validate_radio_config(radios[b], rules, enforce_min_gain);
      all.violations.insert(all.violations.end(), r.violations.begin(), r.violations.end());
      all.waivers.insert(all.waivers.end(), r.waivers.begin(), r.waivers.end());
    }
    return all;
  }

  // Structural invariants; regulatory rules are checked separately.
  void validate() const {
    require(trials >= 1, "trials must be at least 1");
    require(!base_stations.empty(), "scenario needs at least one base station");
    require(user_count() >= 1, "scenario needs at least one user");
    for (const auto& bs : base_stations) {
      require(bs.users >= 0, "user count must be nonnegative");
      require(!bs.bands.empty(), "base station '" + bs.name + "' needs at least one radio");
      require(bs.role != NodeRole::User, "base station role cannot be 'user'");
    }
    for (Band b : kAllBands) {
      require(radios[b].band == b, "radio band mismatch");
      require(radios[b].bandwidth_hz > 0.0, "radio bandwidth must be positive");
    }
    environment.bs_antenna(radios[Band::V], 0.0).validate();
    environment.bs_antenna(radios[Band::E], 0.0).validate();
    environment.terminal_antenna(0.0).validate();
    require(environment.noise_figure_db >= 0.0, "noise figure must be nonnegative");
    require(environment.shadow_loss_db >= 0.0, "shadow loss must be nonnegative");
    require(environment.shadow_probability >= 0.0 && environment.shadow_probability <= 1.0,
            "shadowing probability must lie in [0, 1]");
    for (Band b : kAllBands) {
      const double f = radios[b].carrier.in_ghz();
      require(f >= environment.attenuation.min_ghz() && f <= environment.attenuation.max_ghz(),
              "attenuation table does not cover the " + std::string(to_string(b)) +
                  "-band carrier");
    }
    require(interferers.count >= 0, "interferer count must be nonnegative");
    require(interferers.radius_m > 0.0, "interferer radius must be positive");
    thresholds.validate();
    handover.validate();
    require(trace_step_s > 0.0, "trace step must be positive");
    require(sweep.density_distance_m > 0.0, "density sweep distance must be positive");
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

class ScenarioParser {
 public:
  explicit ScenarioParser(Scenario& scenario) : s_(scenario) {}

  void parse(std::string_view text) {
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = text.find('\n', start);
      std::string_view line =
          text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
      ++line_no;
      handle_line(line, line_no);
      if (end == std::string_view::npos) break;
      start = end + 1;
    }
  }

  // Line on which a key was set, or 0 when it kept its default.
  int line_of(const std::string& key) const {
    auto it = seen_.find(key);
    return it == seen_.end() ? 0 : it->second;
  }

 private:
  void handle_line(std::string_view raw, int line_no) {
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) return;
    const auto eq = raw.find('=');
    if (eq == std::string_view::npos) {
      throw ScenarioError(line_no, "", "expected 'key = value'");
    }
    const std::string key{trim(raw.substr(0, eq))};
    const std::string_view value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ScenarioError(line_no, "", "missing key before '='");
    for (char c : key) {
      if (!(std::islower(static_cast<unsigned char>(c)) ||
            std::isdigit(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
        throw ScenarioError(line_no, key, "keys may only contain [a-z0-9_.]");
      }
    }
    if (value.empty()) throw ScenarioError(line_no, key, "missing value");
    if (auto [it, inserted] = seen_.emplace(key, line_no); !inserted) {
      throw ScenarioError(line_no, key,
                          "duplicate key (first set on line " + std::to_string(it->second) + ")");
    }
    line_ = line_no;
    key_ = key;
    try {
      assign(key, value);
    } catch (const ScenarioError&) {
      throw;
    } catch (const std::exception& e) {
      throw ScenarioError(line_no, key, e.what());
    }
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ScenarioError(line_, key_, message);
  }

  double number(std::string_view v) const {
    double out = 0.0;
    const char* first = v.data();
    const char* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
      fail("expected a finite number, got '" + std::string(v) + "'");
    }
    return out;
  }

  long long integer(std::string_view v) const {
    long long out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      fail("expected an integer, got '" + std::string(v) + "'");
    }
    return out;
  }

  bool boolean(std::string_view v) const {
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    fail("expected true/false, got '" + std::string(v) + "'");
  }

  std::vector<double> number_list(std::string_view v) const {
    std::vector<double> out;
    for (auto part : split(v, ',')) out.push_back(number(part));
    return out;
  }

  Architecture architecture(std::string_view v) const {
    if (v == "single") return Architecture::SingleChain;
    if (v == "dual") return Architecture::DualChain;
    fail("expected 'single' or 'dual', got '" + std::string(v) + "'");
  }

  NodeRole role(std::string_view v) const {
    if (v == "macro") return NodeRole::MacroBS;
    if (v == "pico") return NodeRole::PicoBS;
    if (v == "femto") return NodeRole::FemtoBS;
    fail("expected macro, pico or femto, got '" + std::string(v) + "'");
  }

  BandSet bands(std::string_view v) const {
    BandSet out;
    for (auto part : split(v, ',')) {
      if (part == "V" || part == "v") {
        out.insert(Band::V);
      } else if (part == "E" || part == "e") {
        out.insert(Band::E);
      } else {
        fail("expected a list of V/E, got '" + std::string(v) + "'");
      }
    }
    return out;
  }

  void assign(const std::string& key, std::string_view v) {
    using Setter = std::function<void(std::string_view)>;
    static const std::vector<std::string> kBandKeys = {"v", "e"};

    const std::map<std::string, Setter> scalar = {
        {"trials", [&](auto x) { s_.trials = static_cast<int>(checked_count(integer(x), 1)); }},
        {"seed", [&](auto x) { s_.master_seed = unsigned_value(x); }},
        {"antenna.terminal_gain_dbi", [&](auto x) { s_.environment.terminal_gain_dbi = number(x); }},
        {"antenna.sidelobe_gain_dbi", [&](auto x) { s_.environment.sidelobe_gain_dbi = number(x); }},
        {"antenna.beamwidth_deg", [&](auto x) { s_.environment.beamwidth_deg = number(x); }},
        {"propagation.noise_figure_db", [&](auto x) { s_.environment.noise_figure_db = number(x); }},
        {"propagation.attenuation", [&](auto x) { s_.environment.attenuation = attenuation(x); }},
        {"shadowing.loss_db", [&](auto x) { s_.environment.shadow_loss_db = number(x); }},
        {"shadowing.probability", [&](auto x) { s_.environment.shadow_probability = number(x); }},
        {"regulatory.enforce_min_gain", [&](auto x) { s_.enforce_min_gain = boolean(x); }},
        {"interference.enabled", [&](auto x) { s_.interference_enabled = boolean(x); }},
        {"interferers.count",
         [&](auto x) { s_.interferers.count = static_cast<int>(checked_count(integer(x), 0)); }},
        {"interferers.radius_m", [&](auto x) { s_.interferers.radius_m = number(x); }},
        {"interferers.architecture",
         [&](auto x) { s_.interferers.architecture = architecture(x); }},
        {"policy.snr_low_high_db", [&](auto x) { s_.thresholds.snr_low_high_db = number(x); }},
        {"policy.density_inr_db", [&](auto x) { s_.thresholds.density_inr_db = number(x); }},
        {"policy.hysteresis_db", [&](auto x) { s_.thresholds.hysteresis_db = number(x); }},
        {"policy.demand_bps", [&](auto x) { s_.thresholds.demand_bps = number(x); }},
        {"handover.sync_delay_s", [&](auto x) { s_.handover.sync_delay_s = number(x); }},
        {"handover.feedback_assisted_factor",
         [&](auto x) { s_.handover.feedback_assisted_factor = number(x); }},
        {"handover.trace_step_s", [&](auto x) { s_.trace_step_s = number(x); }},
        {"sweep.distance_m", [&](auto x) { s_.sweep.distances_m = number_list(x); }},
        {"sweep.interferer_counts", [&](auto x) { s_.sweep.interferer_counts = number_list(x); }},
        {"sweep.density_distance_m", [&](auto x) { s_.sweep.density_distance_m = number(x); }},
    };
    if (auto it = scalar.find(key); it != scalar.end()) {
      it->second(v);
      return;
    }

    const auto parts = split(key, '.');
    if (parts.size() == 3 && (parts[0] == "radio" || parts[0] == "regulatory") &&
        (parts[1] == "v" || parts[1] == "e")) {
      const Band band = parts[1] == "v" ? Band::V : Band::E;
      if (parts[0] == "radio") {
        assign_radio(band, parts[2], v);
      } else {
        assign_rule(band, parts[2], v);
      }
      return;
    }
    if (parts.size() == 3 && parts[0] == "bs" && !parts[1].empty()) {
      assign_bs(std::string(parts[1]), parts[2], v);
      return;
    }
    fail("unknown key");
  }

  void assign_radio(Band band, std::string_view field, std::string_view v) {
    RadioConfig& r = s_.radios[band];
    if (field == "carrier_ghz") {
      r.carrier = FrequencyHz::ghz(number(v));
    } else if (field == "bandwidth_hz") {
      r.bandwidth_hz = number(v);
    } else if (field == "tx_power_dbm") {
      r.tx_power_dbm = number(v);
    } else if (field == "antenna_gain_dbi") {
      r.antenna_gain_dbi = number(v);
    } else {
      fail("unknown key");
    }
  }

  void assign_rule(Band band, std::string_view field, std::string_view v) {
    RegulatoryRule& r = s_.rules.rule(band);
    if (field == "max_tx_power_dbm") {
      r.max_tx_power_dbm = number(v);
    } else if (field == "min_antenna_gain_dbi") {
      if (v == "none") {
        r.min_antenna_gain_dbi.reset();
      } else {
        r.min_antenna_gain_dbi = number(v);
      }
    } else if (field == "max_bandwidth_hz") {
      r.max_bandwidth_hz = number(v);
    } else if (field == "licensed") {
      r.licensed = boolean(v);
    } else if (field == "ranges_ghz") {
      r.freq_ranges.clear();
      for (auto part : split(v, ',')) {
        const auto ends = split(part, '-');
        if (ends.size() != 2) fail("expected ranges like '71-76, 81-86'");
        const double lo = number(ends[0]);
        const double hi = number(ends[1]);
        if (!(lo < hi)) fail("range low end must be below high end");
        r.freq_ranges.push_back({lo, hi});
      }
    } else {
      fail("unknown key");
    }
  }

  void assign_bs(const std::string& name, std::string_view field, std::string_view v) {
    auto it = std::find_if(s_.base_stations.begin(), s_.base_stations.end(),
                           [&](const BaseStationSpec& b) { return b.name == name; });
    if (it == s_.base_stations.end()) {
      s_.base_stations.push_back({name, NodeRole::FemtoBS, {0.0, 0.0},
                                  Architecture::DualChain, 0, BandSet::both()});
      it = s_.base_stations.end() - 1;
    }
    if (field == "role") {
      it->role = role(v);
    } else if (field == "x_m") {
      it->position.x = number(v);
    } else if (field == "y_m") {
      it->position.y = number(v);
    } else if (field == "users") {
      it->users = static_cast<int>(checked_count(integer(v), 0));
    } else if (field == "architecture") {
      it->architecture = architecture(v);
    } else if (field == "bands") {
      it->bands = bands(v);
    } else if (field == "enabled") {
      if (!boolean(v)) removed_.push_back(name);
    } else {
      fail("unknown key");
    }
  }

  AttenuationTable attenuation(std::string_view v) const {
    std::vector<AttenuationTable::Anchor> anchors;
    for (auto part : split(v, ',')) {
      const auto fields = split(part, ':');
      if (fields.size() != 2) fail("expected anchors like '57:8, 60:15'");
      anchors.push_back({number(fields[0]), number(fields[1])});
    }
    return AttenuationTable(std::move(anchors));
  }

  long long checked_count(long long value, long long minimum) const {
    if (value < minimum || value > 100'000'000) {
      fail("value " + std::to_string(value) + " out of range");
    }
    return value;
  }

  std::uint64_t unsigned_value(std::string_view v) const {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
      fail("expected a nonnegative integer, got '" + std::string(v) + "'");
    }
    return out;
  }

 public:
  void finish() {
    for (const auto& name : removed_) {
      std::erase_if(s_.base_stations, [&](const BaseStationSpec& b) { return b.name == name; });
    }
  }

 private:
  Scenario& s_;
  std::map<std::string, int> seen_;
  std::vector<std::string> removed_;
  int line_ = 0;
  std::string key_;
};

inline std::string radio_key(Band band, ViolationKind kind) {
  const std::string prefix = band == Band::V ? "radio.v." : "radio.e.";
  switch (kind) {
    case ViolationKind::CarrierOutsideBand:
      return prefix + "carrier_ghz";
    case ViolationKind::BandwidthExceeded:
      return prefix + "bandwidth_hz";
    case ViolationKind::MaxTxPowerExceeded:
      return prefix + "tx_power_dbm";
    case ViolationKind::MinAntennaGain:
      return prefix + "antenna_gain_dbi";
  }
  return prefix;
}

}  // namespace detail

struct ParsedScenario {
  Scenario scenario;
  ValidationReport report;
  std::vector<std::string> diagnostics;  // one line per violation/waiver, with location
};

// Parses and checks structural invariants without rejecting regulatory
// violations; they are returned in the report.
inline ParsedScenario parse_scenario_report(std::string_view text) {
  ParsedScenario out;
  detail::ScenarioParser parser(out.scenario);
  parser.parse(text);
  parser.finish();
  try {
    out.scenario.validate();
  } catch (const DomainError& e) {
    throw ScenarioError(0, "", e.what());
  }
  out.report = out.scenario.regulatory_report();
  for (const auto& v : out.report.violations) {
    const std::string key = detail::radio_key(v.band, v.kind);
    const int line = parser.line_of(key);
    std::ostringstream msg;
    msg << (line > 0 ? "line " + std::to_string(line) : std::string("default")) << ": key '"
        << key << "': violation: " << to_string(v.kind) << ": " << v.detail;
    out.diagnostics.push_back(msg.str());
  }
  for (const auto& w : out.report.waivers) out.diagnostics.push_back("waiver: " + w);
  return out;
}

// Returns a scenario that passes regulatory validation (waivers allowed).
inline Scenario parse_scenario(std::string_view text) {
  ParsedScenario parsed = parse_scenario_report(text);
  if (!parsed.report.ok()) {
    std::string message = "scenario violates regulatory rules";
    for (const auto& d : parsed.diagnostics) message += "\n  " + d;
    throw RegulatoryError(message, parsed.report);
  }
  return std::move(parsed.scenario);
}

}  // namespace hybridnet
