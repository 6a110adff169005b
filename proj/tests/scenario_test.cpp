#include <gtest/gtest.h>

#include "hybridnet/scenario.hpp"

namespace hybridnet {
namespace {

TEST(ParseScenario, EmptyFileIsReferenceScenario) {
  const Scenario s = parse_scenario("");
  ASSERT_EQ(s.base_stations.size(), 2u);
  EXPECT_EQ(s.user_count(), 10u);
  EXPECT_EQ(s.base_stations[0].role, NodeRole::MacroBS);
  EXPECT_EQ(s.base_stations[1].role, NodeRole::FemtoBS);
  EXPECT_EQ(s.radios[Band::V].bandwidth_hz, 5e9);
  EXPECT_EQ(s.radios[Band::E].bandwidth_hz, 5e9);
  EXPECT_EQ(s.radios[Band::V].antenna_gain_dbi + s.environment.terminal_gain_dbi, 30.0);
  EXPECT_EQ(s.environment.shadow_loss_db, 10.0);
  EXPECT_EQ(s.trials, 500);
  EXPECT_EQ(s.sweep.distances_m.size(), 15u);
  EXPECT_NEAR(s.sweep.distances_m.front(), 10.0, 1e-12);
  EXPECT_NEAR(s.sweep.distances_m.back(), 500.0, 1e-9);
  EXPECT_FALSE(s.enforce_min_gain);
}

TEST(ParseScenario, CommentsAndWhitespace) {
  const Scenario s = parse_scenario("# header\n\n  trials = 20   # inline\r\nseed=9\n");
  EXPECT_EQ(s.trials, 20);
  EXPECT_EQ(s.master_seed, 9u);
}

TEST(ParseScenario, OverridesReachEveryModule) {
  const Scenario s = parse_scenario(
      "radio.v.tx_power_dbm = 20\n"
      "radio.e.carrier_ghz = 83.5\n"
      "propagation.attenuation = 57:8, 60:15, 95:0.6\n"
      "shadowing.probability = 0.5\n"
      "policy.hysteresis_db = 1.5\n"
      "policy.demand_bps = 2e10\n"
      "handover.sync_delay_s = 0.02\n"
      "interferers.count = 4\n"
      "interferers.architecture = single\n"
      "sweep.distance_m = 10, 20, 40\n");
  EXPECT_EQ(s.radios[Band::V].tx_power_dbm, 20.0);
  EXPECT_EQ(s.radios[Band::E].carrier.in_ghz(), 83.5);
  EXPECT_EQ(s.environment.attenuation.anchors().size(), 3u);
  EXPECT_EQ(s.environment.shadow_probability, 0.5);
  EXPECT_EQ(s.thresholds.hysteresis_db, 1.5);
  EXPECT_EQ(s.thresholds.demand_bps, 2e10);
  EXPECT_EQ(s.handover.sync_delay_s, 0.02);
  EXPECT_EQ(s.interferers.count, 4);
  EXPECT_EQ(s.interferers.architecture, Architecture::SingleChain);
  EXPECT_EQ(s.sweep.distances_m, (std::vector<double>{10, 20, 40}));
}

TEST(ParseScenario, BaseStationsCanBeAddedAndRemoved) {
  const Scenario s = parse_scenario(
      "bs.femto.enabled = false\n"
      "bs.pico1.role = pico\n"
      "bs.pico1.x_m = -50\n"
      "bs.pico1.users = 3\n"
      "bs.pico1.bands = V\n"
      "bs.pico1.architecture = single\n");
  ASSERT_EQ(s.base_stations.size(), 2u);
  EXPECT_EQ(s.base_stations[1].name, "pico1");
  EXPECT_EQ(s.base_stations[1].role, NodeRole::PicoBS);
  EXPECT_EQ(s.base_stations[1].position.x, -50.0);
  EXPECT_EQ(s.base_stations[1].bands, BandSet::only(Band::V));
  EXPECT_EQ(s.user_count(), 8u);
}

TEST(ParseScenario, RegulatoryViolationIsRejected) {
  try {
    parse_scenario("trials = 3\nradio.v.tx_power_dbm = 30\n");
    FAIL() << "expected RegulatoryError";
  } catch (const RegulatoryError& e) {
    ASSERT_EQ(e.report().violations.size(), 1u);
    EXPECT_EQ(e.report().violations[0].kind, ViolationKind::MaxTxPowerExceeded);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("radio.v.tx_power_dbm"), std::string::npos);
  }
}

TEST(ParseScenario, MinGainEnforcementIsOptIn) {
  const auto waived = parse_scenario_report("");
  EXPECT_TRUE(waived.report.ok());
  EXPECT_EQ(waived.report.waivers.size(), 1u);
  const auto enforced = parse_scenario_report("regulatory.enforce_min_gain = true\n");
  EXPECT_TRUE(enforced.report.has(ViolationKind::MinAntennaGain));
  EXPECT_TRUE(parse_scenario_report("regulatory.enforce_min_gain = true\n"
                                    "radio.e.antenna_gain_dbi = 43\n")
                  .report.ok());
}

TEST(ParseScenario, RegulatoryTableIsConfigurable) {
  const Scenario s = parse_scenario(
      "regulatory.v.max_tx_power_dbm = 30\n"
      "radio.v.tx_power_dbm = 30\n"
      "regulatory.e.ranges_ghz = 71-76, 81-86\n");
  EXPECT_EQ(s.rules.rule(Band::V).max_tx_power_dbm, 30.0);
  EXPECT_EQ(s.rules.rule(Band::E).freq_ranges.size(), 2u);
}

struct BadInput {
  const char* text;
  int line;
  const char* key;
};

class ParseErrors : public ::testing::TestWithParam<BadInput> {};

TEST_P(ParseErrors, NameLineAndKey) {
  const BadInput& bad = GetParam();
  try {
    parse_scenario(bad.text);
    FAIL() << "expected ScenarioError for: " << bad.text;
  } catch (const ScenarioError& e) {
    EXPECT_EQ(e.line(), bad.line) << e.what();
    EXPECT_EQ(e.key(), bad.key) << e.what();
  }
}

INSTANTIATE_TEST_SUITE_P(
    Cases, ParseErrors,
    ::testing::Values(BadInput{"trials = 4\nnot_a_key = 1\n", 2, "not_a_key"},
                      BadInput{"trials = 4\ntrials = 5\n", 2, "trials"},
                      BadInput{"seed = 1\n\nthis line has no equals\n", 3, ""},
                      BadInput{"radio.v.tx_power_dbm = hot\n", 1, "radio.v.tx_power_dbm"},
                      BadInput{"trials = 0\n", 1, "trials"},
                      BadInput{"trials = 2.5\n", 1, "trials"},
                      BadInput{"radio.v.carrier_ghz = 120\n", 1, "radio.v.carrier_ghz"},
                      BadInput{"propagation.attenuation = 60:15\n", 1, "propagation.attenuation"},
                      BadInput{"bs.x.architecture = triple\n", 1, "bs.x.architecture"},
                      BadInput{"radio.q.tx_power_dbm = 1\n", 1, "radio.q.tx_power_dbm"},
                      BadInput{"Trials = 3\n", 1, "Trials"},
                      BadInput{"seed =\n", 1, "seed"}),
    [](const ::testing::TestParamInfo<BadInput>& info) {
      return "case" + std::to_string(info.index);
    });

TEST(ParseScenario, StructuralErrorsAfterParsing) {
  EXPECT_THROW(parse_scenario("bs.macro.users = 0\nbs.femto.users = 0\n"), ScenarioError);
  EXPECT_THROW(parse_scenario("shadowing.probability = 1.5\n"), ScenarioError);
  EXPECT_THROW(parse_scenario("propagation.attenuation = 57:8, 64:8\n"), ScenarioError);
}

TEST(LogSpaced, Endpoints) {
  const auto v = log_spaced(10.0, 1000.0, 3);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_NEAR(v[1], 100.0, 1e-9);
}

}  // namespace
}  // namespace hybridnet
