#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "hybridnet/csv.hpp"
#include "hybridnet/harness.hpp"

namespace hybridnet {
namespace {

Scenario small(int trials = 20) {
  Scenario s;
  s.trials = trials;
  s.master_seed = 77;
  return s;
}

TEST(DeriveSeed, DistinctAcrossSlots) {
  const std::uint64_t a = derive_seed(1, 0, 0, 0);
  EXPECT_NE(a, derive_seed(2, 0, 0, 0));
  EXPECT_NE(a, derive_seed(1, 1, 0, 0));
  EXPECT_NE(a, derive_seed(1, 0, 1, 0));
  EXPECT_NE(a, derive_seed(1, 0, 0, 1));
  EXPECT_NE(derive_seed(1, 1, 0, 0), derive_seed(1, 0, 1, 0));
  EXPECT_EQ(a, derive_seed(1, 0, 0, 0));
}

TEST(Rng, UniformInUnitInterval) {
  Rng rng(3);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1 - 1e-3);
}

TEST(RunTrial, DeterministicPerIndex) {
  const Scenario s = small();
  for (Mode mode : kAllModes) {
    const auto a = run_trial(s, SweepVariable::MeanDistance, {3, 80.0}, mode, 5);
    const auto b = run_trial(s, SweepVariable::MeanDistance, {3, 80.0}, mode, 5);
    EXPECT_EQ(a.mean_throughput_bps(), b.mean_throughput_bps());
    EXPECT_NE(a.mean_throughput_bps(),
              run_trial(s, SweepVariable::MeanDistance, {3, 80.0}, mode, 6).mean_throughput_bps());
  }
}

TEST(RunTrial, ModesShareGeometry) {
  const Scenario s = small();
  const auto v = run_trial(s, SweepVariable::MeanDistance, {0, 60.0}, Mode::VOnly, 2);
  const auto e = run_trial(s, SweepVariable::MeanDistance, {0, 60.0}, Mode::EOnly, 2);
  const auto h = run_trial(s, SweepVariable::MeanDistance, {0, 60.0}, Mode::Hybrid, 2);
  ASSERT_EQ(v.users.size(), e.users.size());
  ASSERT_EQ(v.users.size(), h.users.size());
  for (std::size_t i = 0; i < v.users.size(); ++i) {
    EXPECT_EQ(v.users[i].distance_m, e.users[i].distance_m);
    EXPECT_EQ(v.users[i].shadowed, h.users[i].shadowed);
    EXPECT_EQ(v.users[i].serving, h.users[i].serving);
  }
}

TEST(RunTrial, ForcedModesUseOneBandAndNoHandovers) {
  const Scenario s = small();
  for (Mode mode : {Mode::VOnly, Mode::EOnly}) {
    const auto r = run_trial(s, SweepVariable::InterfererCount, {2, 4.0}, mode, 0);
    EXPECT_EQ(r.users.size(), 14u);
    for (const auto& u : r.users) {
      EXPECT_EQ(u.link.band_assignment,
                BandSet::only(mode == Mode::VOnly ? Band::V : Band::E));
      EXPECT_EQ(u.handovers, 0);
    }
  }
}

TEST(RunTrial, IsolatedHybridDualEqualsSumOfSingles) {
  // a single user, no interference: the dual assignment carries the sum of
  // the two single-band rates
  Scenario s = small();
  s.interference_enabled = false;
  s.base_stations.resize(1);
  s.base_stations[0].users = 1;
  s.environment.shadow_probability = 0.0;
  const auto v = run_trial(s, SweepVariable::MeanDistance, {0, 30.0}, Mode::VOnly, 0);
  const auto e = run_trial(s, SweepVariable::MeanDistance, {0, 30.0}, Mode::EOnly, 0);
  const auto h = run_trial(s, SweepVariable::MeanDistance, {0, 30.0}, Mode::Hybrid, 0);
  ASSERT_EQ(h.users[0].link.band_assignment, BandSet::both());
  EXPECT_NEAR(h.mean_throughput_bps(), v.mean_throughput_bps() + e.mean_throughput_bps(), 1.0);
  EXPECT_EQ(h.users[0].handovers, 1);
}

TEST(RunTrial, TracesCarryNothingWhileSwitching) {
  const Scenario s = small();
  for (std::size_t t = 0; t < 20; ++t) {
    const auto r = run_trial(s, SweepVariable::MeanDistance, {1, 40.0}, Mode::Hybrid, t);
    for (const auto& u : r.users) {
      for (const auto& sample : u.trace) {
        if (is_switching(sample.state)) {
          EXPECT_EQ(sample.throughput_bps, 0.0);
        }
      }
      EXPECT_FALSE(is_switching(u.trace.back().state));
      EXPECT_EQ(transmittable_bands(u.trace.back().state), u.link.band_assignment);
    }
  }
}

TEST(RunTrial, SingleChainServesOneBand) {
  Scenario s = small();
  for (auto& bs : s.base_stations) bs.architecture = Architecture::SingleChain;
  s.interferers.architecture = Architecture::SingleChain;
  for (std::size_t t = 0; t < 10; ++t) {
    const auto r = run_trial(s, SweepVariable::InterfererCount, {0, 8.0}, Mode::Hybrid, t);
    for (const auto& u : r.users) {
      EXPECT_EQ(u.link.band_assignment.size(), 1u);
    }
  }
}

TEST(Summarize, MeanAndInterval) {
  const std::vector<TrialSummary> one{{5.0, 1.0}};
  const CurveRow single = summarize(1.0, one);
  EXPECT_EQ(single.mean_throughput_bps, 5.0);
  EXPECT_EQ(single.ci95_bps, 0.0);
  const std::vector<TrialSummary> four{{1, 0}, {2, 0}, {3, 0}, {4, 2}};
  const CurveRow r = summarize(2.0, four);
  EXPECT_DOUBLE_EQ(r.mean_throughput_bps, 2.5);
  EXPECT_DOUBLE_EQ(r.mean_handovers, 0.5);
  EXPECT_NEAR(r.ci95_bps, 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
}

TEST(RunSweep, SerialAndParallelAgree) {
  const Scenario s = small(12);
  const SweepConfig sweep{SweepVariable::MeanDistance, {15.0, 60.0, 240.0},
                          {kAllModes.begin(), kAllModes.end()}};
  const auto serial = run_sweep(s, sweep, {1});
  const auto parallel = run_sweep(s, sweep, {4});
  EXPECT_EQ(csv_string(serial), csv_string(parallel));
  EXPECT_EQ(csv_string(serial), csv_string(run_sweep(s, sweep, {3})));
}

TEST(RunSweep, ModeSubsetMatchesFullRun) {
  const Scenario s = small(8);
  const SweepConfig all{SweepVariable::InterfererCount, {0, 4, 16},
                        {kAllModes.begin(), kAllModes.end()}};
  const SweepConfig only_e{SweepVariable::InterfererCount, {0, 4, 16}, {Mode::EOnly}};
  const auto full = run_sweep(s, all);
  const auto part = run_sweep(s, only_e);
  const auto& a = curve_for(full, Mode::EOnly);
  const auto& b = curve_for(part, Mode::EOnly);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].mean_throughput_bps, b.rows[i].mean_throughput_bps);
  }
}

TEST(RunSweep, RejectsBadSweeps) {
  const Scenario s = small(2);
  EXPECT_THROW(run_sweep(s, {SweepVariable::MeanDistance, {}, {Mode::VOnly}}), DomainError);
  EXPECT_THROW(run_sweep(s, {SweepVariable::MeanDistance, {20, 10}, {Mode::VOnly}}), DomainError);
  EXPECT_THROW(run_sweep(s, {SweepVariable::InterfererCount, {1.5}, {Mode::VOnly}}), DomainError);
}

TEST(Csv, SignificantDigits) {
  EXPECT_EQ(format_sig6(13.66e9), "1.36600e10");
  EXPECT_EQ(format_sig6(0.25), "2.50000e-1");
  EXPECT_EQ(format_sig6(0.0), "0.00000e0");
  EXPECT_EQ(format_sig6(10.0), "1.00000e1");
  EXPECT_EQ(format_sig6(-123456789.0), "-1.23457e8");
}

TEST(Csv, RowsSortedAndComplete) {
  const Scenario s = small(3);
  const SweepConfig sweep{SweepVariable::MeanDistance, {10.0, 50.0, 200.0},
                          {Mode::Hybrid, Mode::VOnly, Mode::EOnly}};
  auto curves = run_sweep(s, sweep);
  const std::string text = csv_string(curves);
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 10u);
  EXPECT_EQ(lines[0], kCsvHeader);
  EXPECT_EQ(lines[1].substr(0, 12), "1.00000e1,e,");
  EXPECT_EQ(lines[2].substr(0, 17), "1.00000e1,hybrid,");
  EXPECT_EQ(lines[3].substr(0, 12), "1.00000e1,v,");

  std::reverse(curves.begin(), curves.end());
  EXPECT_EQ(csv_string(curves), text);
}

TEST(Csv, UnwritablePathIsIoError) {
  const Scenario s = small(1);
  const auto curves = run_sweep(s, {SweepVariable::MeanDistance, {10.0}, {Mode::VOnly}});
  EXPECT_THROW(emit_csv(curves, std::string("/nonexistent-dir/out.csv")), IoError);
}

// Past a handful of neighbours the E-band lead shrinks: interference paths are
// longer than the serving path, so V-band absorption suppresses them more.
TEST(DensityTrend, GapNarrowsWithInterferers) {
  const Scenario s = small(60);
  const auto curves =
      run_sweep(s, {SweepVariable::InterfererCount, {8, 32, 128}, {Mode::VOnly, Mode::EOnly}});
  const auto& v = curve_for(curves, Mode::VOnly);
  const auto& e = curve_for(curves, Mode::EOnly);
  double prev_gap = 1e300;
  for (std::size_t i = 0; i < v.rows.size(); ++i) {
    const double gap = e.rows[i].mean_throughput_bps - v.rows[i].mean_throughput_bps;
    EXPECT_LT(gap, prev_gap);
    prev_gap = gap;
  }
}

}  // namespace
}  // namespace hybridnet
