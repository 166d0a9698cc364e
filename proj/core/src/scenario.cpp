#include "ycoo/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace ycoo {

std::string_view to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::straight: return "straight";
    case ScenarioKind::lane_change: return "lane_change";
    case ScenarioKind::double_lane_change: return "double_lane_change";
    case ScenarioKind::cross_traffic: return "cross_traffic";
    case ScenarioKind::left_turn: return "left_turn";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view name) {
  for (ScenarioKind k : all_scenarios())
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown scenario: " + std::string(name));
}

const std::vector<ScenarioKind>& all_scenarios() {
  static const std::vector<ScenarioKind> v{ScenarioKind::straight, ScenarioKind::lane_change,
                                           ScenarioKind::double_lane_change, ScenarioKind::cross_traffic,
                                           ScenarioKind::left_turn};
  return v;
}

std::string_view to_string(NoiseMode m) { return m == NoiseMode::psd ? "psd" : "per-sample"; }

NoiseMode parse_noise_mode(std::string_view name) {
  if (name == "per-sample" || name == "per_sample") return NoiseMode::per_sample;
  if (name == "psd") return NoiseMode::psd;
  throw std::invalid_argument("unknown noise mode: " + std::string(name));
}

std::string_view to_string(WheelbaseScaling m) { return m == WheelbaseScaling::front ? "front" : "proportional"; }

WheelbaseScaling parse_wheelbase_scaling(std::string_view name) {
  if (name == "proportional") return WheelbaseScaling::proportional;
  if (name == "front") return WheelbaseScaling::front;
  throw std::invalid_argument("unknown wheelbase scaling: " + std::string(name));
}

VehicleParams scale_wheelbase(const VehicleParams& p, double factor, WheelbaseScaling mode) {
  if (!(factor > 0.0)) throw std::invalid_argument("wheelbase factor must be positive");
  const VehicleParams out = mode == WheelbaseScaling::front ? p.front_scaled(factor) : p.scaled(factor);
  if (!(out.lf > 0.0)) throw std::invalid_argument("wheelbase factor leaves no front axle distance");
  return out;
}

double ScenarioSpec::noise_variance() const {
  return noise_mode == NoiseMode::psd ? noise_power / sensor_period : noise_power;
}

namespace {

double profile(const std::vector<InputSegment>& segs, double t, double member_t) {
  double v = 0.0;
  for (const auto& s : segs) {
    if (s.shape == InputSegment::Shape::hold) {
      if (member_t >= s.t0 && member_t < s.t1) v += s.amplitude;
    } else if (member_t >= s.t0 && member_t <= s.t1) {
      v += s.amplitude * std::sin(2.0 * kPi * (t - s.t0) / (s.t1 - s.t0));
    }
  }
  return v;
}

}  // namespace

ControlInput ScenarioSpec::input(double t, double member_t) const {
  return {profile(steer, t, member_t), profile(accel, t, member_t)};
}

std::size_t ScenarioSpec::steps() const { return static_cast<std::size_t>(std::llround(duration / dt)); }

std::size_t ScenarioSpec::steps_per_sample() const {
  return static_cast<std::size_t>(std::llround(sensor_period / dt));
}

void ScenarioSpec::validate() const {
  if (!(duration > 0.0) || !(dt > 0.0) || !(sensor_period > 0.0))
    throw std::invalid_argument("scenario: duration, dt and sensor period must be positive");
  if (std::abs(sensor_period / dt - static_cast<double>(steps_per_sample())) > 1e-9 || steps_per_sample() == 0)
    throw std::invalid_argument("scenario: sensor period must be a whole number of steps");
  if (std::abs(duration / sensor_period - std::round(duration / sensor_period)) > 1e-9)
    throw std::invalid_argument("scenario: duration must be a whole number of sensor periods");
  if (noise_power < 0.0) throw std::invalid_argument("scenario: negative noise power");
  if (!(truth_params.lf > 0.0 && truth_params.lr > 0.0))
    throw std::invalid_argument("scenario: axle distances must be positive");
}

ScenarioSpec build_scenario(ScenarioKind kind, const ScenarioOverrides& o) {
  using Shape = InputSegment::Shape;
  ScenarioSpec s;
  s.kind = kind;
  const double two = deg2rad(2.0);
  switch (kind) {
    case ScenarioKind::straight:
      s.initial = {0.0, 0.0, 8.0, 0.0};
      s.accel = {{0.0, 5.0, 0.7, Shape::hold}};
      break;
    case ScenarioKind::lane_change:
      s.initial = {0.0, 0.0, 10.0, 0.0};
      s.steer = {{3.0, 7.0, two, Shape::sine}};
      break;
    case ScenarioKind::double_lane_change:
      s.initial = {0.0, 0.0, 10.0, 0.0};
      s.steer = {{2.0, 6.0, two, Shape::sine}, {6.0, 10.0, -two, Shape::sine}};
      break;
    case ScenarioKind::cross_traffic:
      s.initial = {0.0, 0.0, 8.0, deg2rad(270.0)};
      s.accel = {{0.0, 5.0, 0.7, Shape::hold}};
      break;
    case ScenarioKind::left_turn:
      s.duration = 20.0;
      s.initial = {0.0, 0.0, 8.0, deg2rad(100.0)};
      s.steer = {{4.0, 16.0, deg2rad(4.0), Shape::hold}};
      break;
  }
  if (o.duration) s.duration = *o.duration;
  if (o.speed) s.initial.speed = *o.speed;
  if (o.heading_deg) s.initial.heading = deg2rad(*o.heading_deg);
  if (o.steer_amplitude_deg)
    for (auto& g : s.steer) g.amplitude = std::copysign(deg2rad(*o.steer_amplitude_deg), g.amplitude);
  if (o.accel_amplitude)
    for (auto& g : s.accel) g.amplitude = *o.accel_amplitude;
  if (o.noise_power) s.noise_power = *o.noise_power;
  if (o.noise_mode) s.noise_mode = *o.noise_mode;
  if (o.seed) s.seed = *o.seed;
  if (o.wheelbase_factor) s.truth_params = scale_wheelbase(s.truth_params, *o.wheelbase_factor, o.wheelbase_scaling);
  s.validate();
  return s;
}

}  // namespace ycoo
