#pragma once

#include <ycoo/scenario.hpp>
#include <ycoo/simulation.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ycoo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad configuration or flag value; maps to the usage exit code.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a subcommand needs. Defaults reproduce the five-scenario
/// comparison with 30 runs per scenario.
struct RunConfig {
  std::vector<ScenarioKind> scenarios = all_scenarios();
  ScenarioOverrides overrides;
  ObserverSelection observers;
  std::size_t runs = 30;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "ycoo_out";
  std::vector<double> lt_factors{1.0, 0.8, 1.2};
  ScenarioKind robustness_scenario = ScenarioKind::double_lane_change;
  bool plots = false;
  unsigned threads = 0;
  LuenbergerInput luenberger_input = LuenbergerInput::truth;
  InitMode init = InitMode::truth;
  ObserverSource source = ObserverSource::pipeline;
  std::optional<std::filesystem::path> design_data;
};

/// JSON object with any subset of the RunConfig keys; unknown keys, wrong
/// types and bad enum names throw ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);

ObserverSelection parse_observer_selection(std::string_view name);

/// Spec for one scenario of the config, seeded with seed.
ScenarioSpec scenario_for(const RunConfig& cfg, ScenarioKind kind, std::uint64_t seed);

int cmd_design(const RunConfig& cfg, const std::vector<int>& ids, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_robustness(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: flag parsing, environment overrides (YCOO_OUT_DIR,
/// YCOO_SEED), dispatch. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ycoo::cli
