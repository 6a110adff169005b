// Command-line driver: loads a scenario, runs a distance or density sweep and
// writes the aggregate curves as CSV.
//
// Exit codes: 0 success, 1 regulatory validation failure, 2 I/O or parse error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "hybridnet/hybridnet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hybridnet::IoError("cannot open scenario '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid V/E-band millimeter-wave HetNet Monte-Carlo simulator"};

  std::string scenario_path;
  std::string sweep = "distance";
  std::string mode = "all";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string out_path;
  bool validate_only = false;
  unsigned threads = 1;

  app.add_option("--scenario", scenario_path, "Scenario file (defaults when omitted)");
  app.add_option("--sweep", sweep, "Swept variable")
      ->check(CLI::IsMember({"distance", "density"}));
  app.add_option("--mode", mode, "Band mode")->check(CLI::IsMember({"v", "e", "hybrid", "all"}));
  app.add_option("--trials", trials, "Trials per sweep point")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Master seed");
  app.add_option("--out", out_path, "Output CSV path (standard output when omitted)");
  app.add_flag("--validate-only", validate_only, "Print the regulatory report and exit");
  app.add_option("--threads", threads, "Worker threads, 0 = all hardware threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitIo;
  }

  try {
    const std::string text = scenario_path.empty() ? std::string() : read_file(scenario_path);
    hybridnet::ParsedScenario parsed = hybridnet::parse_scenario_report(text);
    for (const auto& line : parsed.diagnostics) std::cerr << line << '\n';
    if (validate_only) {
      std::cerr << (parsed.report.ok() ? "regulatory validation passed"
                                       : "regulatory validation failed")
                << '\n';
      return parsed.report.ok() ? kExitOk : kExitValidation;
    }
    if (!parsed.report.ok()) return kExitValidation;

    hybridnet::Scenario scenario = std::move(parsed.scenario);
    if (trials) scenario.trials = *trials;
    if (seed) scenario.master_seed = *seed;

    hybridnet::SweepConfig config = sweep == "distance" ? hybridnet::SweepConfig::distance(scenario)
                                                        : hybridnet::SweepConfig::density(scenario);
    if (mode == "v") {
      config.modes = {hybridnet::Mode::VOnly};
    } else if (mode == "e") {
      config.modes = {hybridnet::Mode::EOnly};
    } else if (mode == "hybrid") {
      config.modes = {hybridnet::Mode::Hybrid};
    }

    const auto curves = hybridnet::run_sweep(scenario, config, {threads});
    if (out_path.empty()) {
      hybridnet::emit_csv(curves, std::cout);
      std::cout.flush();
    } else {
      hybridnet::emit_csv(curves, out_path);
    }
    return kExitOk;
  } catch (const hybridnet::RegulatoryError& e) {
    std::cerr << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
