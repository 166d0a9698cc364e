#pragma once

#include "ycoo/vehicle_model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ycoo {

enum class ScenarioKind { straight, lane_change, double_lane_change, cross_traffic, left_turn };

std::string_view to_string(ScenarioKind k);
/// Throws std::invalid_argument for an unknown name.
ScenarioKind parse_scenario_kind(std::string_view name);
const std::vector<ScenarioKind>& all_scenarios();

/// One window of an input profile. `hold` applies amplitude on [t0, t1);
/// `sine` applies amplitude * sin(2 pi (t - t0) / (t1 - t0)) on [t0, t1].
struct InputSegment {
  enum class Shape { hold, sine };
  double t0 = 0.0;
  double t1 = 0.0;
  double amplitude = 0.0;  // rad for steering, m/s^2 for acceleration
  Shape shape = Shape::hold;
};

enum class NoiseMode { per_sample, psd };
std::string_view to_string(NoiseMode m);
NoiseMode parse_noise_mode(std::string_view name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::straight;
  double duration = 10.0;
  VehicleState initial;
  std::vector<InputSegment> steer;
  std::vector<InputSegment> accel;
  double dt = 1e-4;
  double sensor_period = 1e-3;
  double noise_power = 0.01;  // m^2
  NoiseMode noise_mode = NoiseMode::per_sample;
  std::uint64_t seed = 1;
  VehicleParams truth_params;

  /// Per-sample variance implied by the noise power and mode.
  [[nodiscard]] double noise_variance() const;
  /// Input at time t. Window membership is decided at `member_t` so that a
  /// whole integration step sees one side of a discontinuity.
  [[nodiscard]] ControlInput input(double t, double member_t) const;
  [[nodiscard]] ControlInput input(double t) const { return input(t, t); }
  /// Throws std::invalid_argument on nonpositive periods/duration, a sensor
  /// period that is not a whole number of steps, or negative noise power.
  void validate() const;
  [[nodiscard]] std::size_t steps() const;
  [[nodiscard]] std::size_t steps_per_sample() const;
};

/// How a wheelbase factor is spread over the axles: both distances scaled, or
/// the front distance alone absorbing the change.
enum class WheelbaseScaling { proportional, front };
std::string_view to_string(WheelbaseScaling m);
WheelbaseScaling parse_wheelbase_scaling(std::string_view name);
VehicleParams scale_wheelbase(const VehicleParams& p, double factor, WheelbaseScaling mode);

/// Optional overrides applied on top of the default profile of a kind.
struct ScenarioOverrides {
  std::optional<double> duration;
  std::optional<double> speed;          // m/s
  std::optional<double> heading_deg;
  std::optional<double> steer_amplitude_deg;
  std::optional<double> accel_amplitude;
  std::optional<double> noise_power;
  std::optional<NoiseMode> noise_mode;
  std::optional<std::uint64_t> seed;
  std::optional<double> wheelbase_factor;
  WheelbaseScaling wheelbase_scaling = WheelbaseScaling::proportional;
};

/// Default maneuver for kind, then overrides.
ScenarioSpec build_scenario(ScenarioKind kind, const ScenarioOverrides& overrides = {});

}  // namespace ycoo
