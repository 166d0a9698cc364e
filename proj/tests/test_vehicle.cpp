#include "oracle_values.hpp"
#include "support.hpp"

#include <ycoo/vehicle_model.hpp>

#include <doctest.h>

#include <random>

using namespace ycoo;
using testing::rel_err;

namespace {

struct Point {
  VehicleState s;
  ControlInput u;
};

Point random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> pos(-50.0, 50.0), speed(0.0, 20.0), heading(0.0, 2.0 * kPi),
      steer(deg2rad(-20.0), deg2rad(20.0)), accel(-3.0, 3.0);
  return {{pos(rng), pos(rng), speed(rng), heading(rng)}, {steer(rng), accel(rng)}};
}

}  // namespace

TEST_SUITE("vehicle") {
  TEST_CASE("slip angle examples") {
    const VehicleParams p;
    CHECK(slip_angle(0.0, p) == 0.0);
    CHECK(rel_err(rad2deg(slip_angle(deg2rad(20.0), p)), oracle::kSlip20Deg) < 1e-12);
    // small steering: beta / steer tends to the rear share of the wheelbase
    const double ratio = slip_angle(1e-7, p) / 1e-7;
    CHECK(ratio == doctest::Approx(1.45 / 2.8).epsilon(1e-10));
    CHECK(10.0 * ratio == doctest::Approx(5.1786).epsilon(1e-4));
  }

  TEST_CASE("dynamics examples") {
    const VehicleParams p;
    const Vec4 straight = dynamics({0, 0, 10, 0}, {0, 0}, p);
    CHECK(straight[0] == doctest::Approx(10.0));
    CHECK(straight[1] == 0.0);
    CHECK(straight[2] == 0.0);
    CHECK(straight[3] == 0.0);

    const Vec4 still = dynamics({1, 2, 0, 0.7}, {deg2rad(12.0), 2.0}, p);
    CHECK(still[0] == 0.0);
    CHECK(still[1] == 0.0);
    CHECK(still[2] == 2.0);
    CHECK(still[3] == 0.0);

    const Vec4 turning = dynamics({0, 0, 10, 0}, {deg2rad(10.0), 0}, p);
    CHECK(rel_err(turning[3], oracle::kYawRate10) < 1e-12);
  }

  TEST_CASE("measurement picks Y then X") {
    const Measurement m = measure({3, 7, 4, 1});
    CHECK(m.y == 7.0);
    CHECK(m.x == 3.0);
    const Measurement o = measure({});
    CHECK(o.y == 0.0);
    CHECK(o.x == 0.0);

    std::mt19937_64 rng(3);
    for (int k = 0; k < 20; ++k) {
      const auto pt = random_point(rng);
      const Vec2 cs = output_matrix() * pt.s.vec();
      CHECK(cs[0] == measure(pt.s).y);
      CHECK(cs[1] == measure(pt.s).x);
    }
  }

  TEST_CASE("state Jacobian at the design points") {
    const VehicleParams p;
    const Mat4 a0 = jacobian_A({0, 0, 10, 0}, {0, 0}, p);
    Mat4 want = Mat4::Zero();
    want(0, 2) = 1.0;
    want(1, 3) = 10.0;
    CHECK((a0 - want).cwiseAbs().maxCoeff() < 1e-12);

    const Mat4 a120 = jacobian_A({0, 0, 10, deg2rad(120.0)}, {0, 0}, p);
    CHECK(a120(0, 2) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(a120(0, 3) == doctest::Approx(-8.660).epsilon(1e-4));
    CHECK(a120(1, 2) == doctest::Approx(0.866).epsilon(1e-3));
    CHECK(a120(1, 3) == doctest::Approx(-5.0).epsilon(1e-12));

    const Mat4 still = jacobian_A({0, 0, 0, 1.1}, {deg2rad(7.0), 0.5}, p);
    CHECK(still.col(3).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("input Jacobian at the design points") {
    const VehicleParams p;
    const Mat42 b0 = jacobian_B({0, 0, 10, 0}, {0, 0}, p);
    CHECK(b0(0, 0) == doctest::Approx(0.0));
    CHECK(b0(1, 0) == doctest::Approx(5.1786).epsilon(1e-4));
    CHECK(b0(2, 0) == 0.0);
    CHECK(b0(3, 0) == doctest::Approx(3.5714).epsilon(1e-4));
    CHECK(b0.col(1) == Vec4(0, 0, 1, 0));

    const Mat42 b120 = jacobian_B({0, 0, 10, deg2rad(120.0)}, {0, 0}, p);
    CHECK(b120(0, 0) == doctest::Approx(-4.485).epsilon(1e-3));
    CHECK(b120(3, 0) == doctest::Approx(10.0 / 2.8).epsilon(1e-12));

    const Mat42 still = jacobian_B({0, 0, 0, 0.3}, {0, 0}, p);
    CHECK(still.col(0).cwiseAbs().maxCoeff() == 0.0);
    CHECK(still.col(1) == Vec4(0, 0, 1, 0));
  }

  TEST_CASE("RK4 is exact on the straight-line subsystem") {
    const VehicleParams p;
    const double dt = 1e-4;
    const VehicleState s0{2.0, -1.0, 10.0, 0.0};
    const VehicleState s1 = integrate_step(s0, {0, 0}, p, dt);
    CHECK(s1.x == doctest::Approx(2.0 + 10.0 * dt).epsilon(1e-15));
    CHECK(s1.y == s0.y);
    CHECK(s1.speed == s0.speed);
    CHECK(s1.heading == s0.heading);

    const VehicleState s2 = integrate_step(s0, {0, 1.5}, p, dt);
    CHECK(s2.speed == doctest::Approx(10.0 + 1.5 * dt).epsilon(1e-15));
  }

  TEST_CASE("constant-rate turn heading after one second") {
    const VehicleParams p;
    VehicleState s{0, 0, 10, 0};
    const ControlInput u{deg2rad(5.0), 0.0};
    for (int k = 0; k < 10000; ++k) s = integrate_step(s, u, p, 1e-4);
    CHECK(rel_err(s.heading, oracle::kHeading5After1s) < 1e-8);
  }

  TEST_CASE("heading is kept unwrapped") {
    const VehicleParams p;
    VehicleState s{0, 0, 10, 0};
    for (int k = 0; k < 60000; ++k) s = integrate_step(s, {deg2rad(20.0), 0.0}, p, 1e-4);
    CHECK(s.heading > 2.0 * kPi);
    CHECK(wrap_degrees(s.heading) >= 0.0);
    CHECK(wrap_degrees(s.heading) < 360.0);
    CHECK(wrap_degrees(deg2rad(-30.0)) == doctest::Approx(330.0));
  }

  TEST_CASE("property: Jacobians match central differences") {
    const VehicleParams p;
    std::mt19937_64 rng(2024);
    const double h = 1e-6;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto pt = random_point(rng);
      const Mat4 a = jacobian_A(pt.s, pt.u, p);
      const Mat42 b = jacobian_B(pt.s, pt.u, p);
      for (int j = 0; j < 4; ++j) {
        Vec4 up = pt.s.vec(), dn = pt.s.vec();
        up[j] += h;
        dn[j] -= h;
        const Vec4 fd =
            (dynamics(VehicleState::from(up), pt.u, p) - dynamics(VehicleState::from(dn), pt.u, p)) / (2 * h);
        worst = std::max(worst, (fd - a.col(j)).cwiseAbs().maxCoeff());
      }
      for (int j = 0; j < 2; ++j) {
        Vec2 up = pt.u.vec(), dn = pt.u.vec();
        up[j] += h;
        dn[j] -= h;
        const Vec4 fd =
            (dynamics(pt.s, ControlInput::from(up), p) - dynamics(pt.s, ControlInput::from(dn), p)) / (2 * h);
        worst = std::max(worst, (fd - b.col(j)).cwiseAbs().maxCoeff());
      }
    }
    INFO("worst abs deviation " << worst);
    CHECK(worst < 1e-5);
  }

  TEST_CASE("property: speed is invariant without acceleration") {
    const VehicleParams p;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
      auto pt = random_point(rng);
      VehicleState s = pt.s;
      for (int k = 0; k < 1000; ++k) s = integrate_step(s, {pt.u.steer, 0.0}, p, 1e-4);
      CHECK(s.speed == pt.s.speed);
    }
  }

  TEST_CASE("property: linearization error is second order") {
    const VehicleParams p;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dir(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
      auto pt = random_point(rng);
      pt.s.speed = 2.0 + pt.s.speed * 0.9;
      const Vec4 ds(dir(rng), dir(rng), dir(rng), 0.1 * dir(rng));
      const Vec2 du(0.05 * dir(rng), dir(rng));
      const Mat4 a = jacobian_A(pt.s, pt.u, p);
      const Mat42 b = jacobian_B(pt.s, pt.u, p);
      const Vec4 f0 = dynamics(pt.s, pt.u, p);
      auto err = [&](double step) {
        const Vec4 f = dynamics(VehicleState::from(pt.s.vec() + step * ds), ControlInput::from(pt.u.vec() + step * du), p);
        return (f - f0 - step * (a * ds + b * du)).norm();
      };
      const double ratio = err(1e-2) / err(5e-3);
      CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
    }
  }

  TEST_CASE("property: small-angle model stays within 2% of the exact rates at 10 m/s") {
    // position rates are compared against the speed, the yaw rate against itself
    const VehicleParams p;
    double worst_pos = 0.0, worst_yaw = 0.0;
    for (double steer_deg = -20.0; steer_deg <= 20.0; steer_deg += 1.0) {
      for (double psi_deg = 0.0; psi_deg < 360.0; psi_deg += 15.0) {
        const VehicleState s{0, 0, 10.0, deg2rad(psi_deg)};
        const ControlInput u{deg2rad(steer_deg), 0.5};
        const Vec4 f = dynamics(s, u, p);
        const Vec4 g = small_angle_dynamics(s, u, p);
        worst_pos = std::max(worst_pos, std::max(std::abs(f[0] - g[0]), std::abs(f[1] - g[1])) / s.speed);
        CHECK(g[2] == f[2]);
        if (steer_deg != 0.0) worst_yaw = std::max(worst_yaw, std::abs(f[3] - g[3]) / std::abs(f[3]));
      }
    }
    INFO("position rate deviation " << worst_pos << ", yaw rate deviation " << worst_yaw);
    CHECK(worst_pos < 0.02);
    CHECK(worst_yaw < 0.02);
  }

  TEST_CASE("axle scaling keeps or moves the rear share") {
    const VehicleParams p;
    CHECK(p.wheelbase() == doctest::Approx(2.8));
    CHECK(p.scaled(0.8).wheelbase() == doctest::Approx(2.24));
    CHECK(p.scaled(0.8).lr / p.scaled(0.8).wheelbase() == doctest::Approx(p.lr / p.wheelbase()));
    CHECK(p.front_scaled(1.2).wheelbase() == doctest::Approx(3.36));
    CHECK(p.front_scaled(1.2).lr == p.lr);
  }
}
