#include "ycoo/vehicle_model.hpp"

#include <cmath>

namespace ycoo {

double slip_angle(double steer, const VehicleParams& p) {
  return std::atan(p.lr * std::tan(steer) / p.wheelbase());
}

Vec4 dynamics(const VehicleState& s, const ControlInput& u, const VehicleParams& p) {
  const double beta = slip_angle(u.steer, p);
  return {s.speed * std::cos(s.heading + beta), s.speed * std::sin(s.heading + beta), u.accel,
          s.speed * std::cos(beta) * std::tan(u.steer) / p.wheelbase()};
}

Measurement measure(const VehicleState& s) { return {s.y, s.x}; }

Mat24 output_matrix() {
  Mat24 c;
  c << 0, 1, 0, 0,
       1, 0, 0, 0;
  return c;
}

Mat4 jacobian_A(const VehicleState& s, const ControlInput& u, const VehicleParams& p) {
  const double beta = slip_angle(u.steer, p);
  const double c = std::cos(s.heading + beta);
  const double sn = std::sin(s.heading + beta);
  Mat4 a = Mat4::Zero();
  a(0, 2) = c;
  a(0, 3) = -s.speed * sn;
  a(1, 2) = sn;
  a(1, 3) = s.speed * c;
  a(3, 2) = std::cos(beta) * std::tan(u.steer) / p.wheelbase();
  return a;
}

Mat42 jacobian_B(const VehicleState& s, const ControlInput& u, const VehicleParams& p) {
  const double L = p.wheelbase();
  const double k = p.lr / L;
  const double t = std::tan(u.steer);
  const double sec2 = 1.0 + t * t;
  const double beta = std::atan(k * t);
  const double dbeta = k * sec2 / (1.0 + k * k * t * t);
  Mat42 b = Mat42::Zero();
  b(0, 0) = -s.speed * std::sin(s.heading + beta) * dbeta;
  b(1, 0) = s.speed * std::cos(s.heading + beta) * dbeta;
  b(3, 0) = s.speed / L * (std::cos(beta) * sec2 - std::sin(beta) * dbeta * t);
  b(2, 1) = 1.0;
  return b;
}

Vec4 small_angle_dynamics(const VehicleState& s, const ControlInput& u, const VehicleParams& p) {
  return {s.speed * std::cos(s.heading), s.speed * std::sin(s.heading), u.accel,
          s.speed * u.steer / p.wheelbase()};
}

VehicleState integrate_step(const VehicleState& s, const ControlInput& u, const VehicleParams& p, double dt) {
  return integrate_step(s, [&](double) { return u; }, 0.0, p, dt);
}

double wrap_degrees(double heading_rad) {
  double d = std::fmod(rad2deg(heading_rad), 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d -= 360.0;
  return d;
}

}  // namespace ycoo
