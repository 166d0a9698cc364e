#pragma once

#include <Eigen/Core>

namespace ycoo {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat42 = Eigen::Matrix<double, 4, 2>;
using Mat24 = Eigen::Matrix<double, 2, 4>;

/// Planar pose and speed. heading is in radians and is never wrapped.
struct VehicleState {
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double heading = 0.0;

  [[nodiscard]] Vec4 vec() const { return {x, y, speed, heading}; }
  static VehicleState from(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
};

/// Front-wheel steering angle (rad) and longitudinal acceleration (m/s^2).
struct ControlInput {
  double steer = 0.0;
  double accel = 0.0;

  [[nodiscard]] Vec2 vec() const { return {steer, accel}; }
  static ControlInput from(const Vec2& v) { return {v[0], v[1]}; }
};

/// Axle distances from the center of mass (m).
struct VehicleParams {
  double lf = 1.35;
  double lr = 1.45;

  [[nodiscard]] double wheelbase() const { return lf + lr; }
  /// Same rear/front split with the wheelbase multiplied by factor.
  [[nodiscard]] VehicleParams scaled(double factor) const { return {lf * factor, lr * factor}; }
  /// Wheelbase multiplied by factor with lr held fixed.
  [[nodiscard]] VehicleParams front_scaled(double factor) const { return {wheelbase() * factor - lr, lr}; }
};

/// Position fix ordered (Y, X).
struct Measurement {
  double y = 0.0;
  double x = 0.0;

  [[nodiscard]] Vec2 vec() const { return {y, x}; }
};

double slip_angle(double steer, const VehicleParams& p);

Vec4 dynamics(const VehicleState& s, const ControlInput& u, const VehicleParams& p);

Measurement measure(const VehicleState& s);

/// Output selection matrix mapping the state onto (Y, X).
Mat24 output_matrix();

/// d(dynamics)/d(state).
Mat4 jacobian_A(const VehicleState& s, const ControlInput& u, const VehicleParams& p);

/// d(dynamics)/d(input), exact for any steering angle.
Mat42 jacobian_B(const VehicleState& s, const ControlInput& u, const VehicleParams& p);

/// Right-hand side with the small-angle simplifications (cos(beta) = 1,
/// beta dropped from the heading terms, tan(steer) = steer).
Vec4 small_angle_dynamics(const VehicleState& s, const ControlInput& u, const VehicleParams& p);

/// One classical RK4 step with the input held constant.
VehicleState integrate_step(const VehicleState& s, const ControlInput& u, const VehicleParams& p, double dt);

/// One RK4 step with the input sampled at the stage times t, t + dt/2, t + dt.
template <class InputFn>
VehicleState integrate_step(const VehicleState& s, InputFn&& input, double t, const VehicleParams& p,
                            double dt) {
  const Vec4 x = s.vec();
  const ControlInput u0 = input(t);
  const ControlInput um = input(t + 0.5 * dt);
  const ControlInput u1 = input(t + dt);
  const Vec4 k1 = dynamics(s, u0, p);
  const Vec4 k2 = dynamics(VehicleState::from(x + 0.5 * dt * k1), um, p);
  const Vec4 k3 = dynamics(VehicleState::from(x + 0.5 * dt * k2), um, p);
  const Vec4 k4 = dynamics(VehicleState::from(x + dt * k3), u1, p);
  return VehicleState::from(x + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Heading in degrees wrapped to [0, 360).
double wrap_degrees(double heading_rad);

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

}  // namespace ycoo
