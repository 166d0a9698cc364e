#pragma once

#include "ycoo/luenberger.hpp"
#include "ycoo/observer_bank.hpp"
#include "ycoo/scenario.hpp"

#include <array>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace ycoo {

enum class ObserverKind { ycoo, luenberger };
std::string_view to_string(ObserverKind k);

/// What the baseline observer propagates its model with.
enum class LuenbergerInput { truth, zero };

/// How the observers' internal state starts: at the true state; at the first
/// position fix with the scenario's nominal speed and heading; or at the
/// second fix with heading and speed from the bearing and distance between
/// the first two fixes (the observers idle until then).
enum class InitMode { truth, first_sample, two_sample };
std::string_view to_string(InitMode m);
InitMode parse_init_mode(std::string_view name);

struct ObserverSetup {
  std::shared_ptr<const BankPrototype> bank;
  std::vector<LuenbergerRegion> regions;
  VehicleParams model;
  LuenbergerInput luenberger_input = LuenbergerInput::truth;
  InitMode init = InitMode::truth;

  static ObserverSetup from(const DesignData& data, ObserverSource source = ObserverSource::pipeline);
};

struct TraceRow {
  double t = 0.0;
  VehicleState truth;
  VehicleState est;
  Measurement meas;
  ControlInput u_true;
  ControlInput u_est;
  std::array<double, 3> weights{};
  int region = 0;  // 1-based baseline gain region, 0 for the bank
};

struct SimTrace {
  ObserverKind observer = ObserverKind::ycoo;
  ScenarioKind scenario = ScenarioKind::straight;
  std::uint64_t seed = 0;
  double sample_period = 1e-3;
  std::vector<TraceRow> rows;
};

struct RunResult {
  std::optional<SimTrace> ycoo;
  std::optional<SimTrace> luenberger;
};

struct ObserverSelection {
  bool ycoo = true;
  bool luenberger = true;
};

class SimulationDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Position fix with independent zero-mean Gaussian noise of the given
/// variance on Y then X. Variance 0 draws nothing.
Measurement sensor_sample(const VehicleState& truth, double variance, std::mt19937_64& rng);

/// One truth trajectory shared by the selected observers. The truth runs at
/// spec.dt with the scenario input; the sensor is sampled every
/// spec.sensor_period and held in between; rows are logged at sensor rate,
/// t = 0 through t = duration. Throws SimulationDiverged if a state leaves
/// [-1e6, 1e6] or stops being finite.
RunResult simulate(const ScenarioSpec& spec, const ObserverSetup& setup, ObserverSelection which = {});

SimTrace run_closed_loop(const ScenarioSpec& spec, ObserverKind observer, const ObserverSetup& setup);

/// n_runs independent runs with seeds base_seed + k, results in seed order.
/// threads = 0 picks the hardware concurrency.
std::vector<RunResult> monte_carlo(const ScenarioSpec& spec, const ObserverSetup& setup, ObserverSelection which,
                                   std::size_t n_runs, std::uint64_t base_seed, unsigned threads = 0);

struct RobustnessRun {
  double factor = 1.0;
  VehicleParams truth_params;
  RunResult result;
};

/// Noise-free runs with the truth wheelbase multiplied by each factor while
/// the observers keep their nominal model.
std::vector<RobustnessRun> robustness_sweep(const ScenarioSpec& base, const std::vector<double>& factors,
                                            const ObserverSetup& setup, ObserverSelection which = {},
                                            WheelbaseScaling scaling = WheelbaseScaling::proportional);

}  // namespace ycoo
