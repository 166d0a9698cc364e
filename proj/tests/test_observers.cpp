#include "oracle_values.hpp"
#include "support.hpp"

#include <ycoo/design_data.hpp>
#include <ycoo/luenberger.hpp>
#include <ycoo/observer_bank.hpp>
#include <ycoo/simulation.hpp>
#include <ycoo/state_space.hpp>

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <random>

using namespace ycoo;
using testing::rel_err;

namespace {

const DesignData& data() { return embedded_design_data(); }

const std::vector<TransferMatrix>& observers() {
  static const std::vector<TransferMatrix> g = pipeline_observers(data());
  return g;
}

const BankLayout& layout() {
  static const BankLayout l = BankLayout::from(data());
  return l;
}

std::shared_ptr<const BankPrototype> prototype() {
  static const auto p = std::make_shared<const BankPrototype>(BankPrototype::from(data()));
  return p;
}

RationalFunction first_order(double pole) {
  return RationalFunction(Polynomial::constant(1.0), Polynomial({pole, 1.0}));
}

void check_weights(double psi, std::array<double, 3> want, double tol = 1e-12) {
  const Eigen::VectorXd w = select_weights(psi, layout());
  REQUIRE(w.size() == 3);
  CAPTURE(psi);
  for (int k = 0; k < 3; ++k) CHECK(w[k] == doctest::Approx(want[static_cast<std::size_t>(k)]).epsilon(tol));
}

}  // namespace

TEST_SUITE("observers") {
  TEST_CASE("realization of a first-order lag") {
    const StateSpaceModel ss = realize(TransferMatrix(1, 1, {first_order(1.0)}));
    CHECK(ss.states() == 1);
    for (double w : {0.01, 1.0, 100.0})
      CHECK(rel_err(ss.eval(Complex(0, w))(0, 0), first_order(1.0).at_frequency(w)) < 1e-12);
    // pole preserved whatever the scaling of the state
    CHECK(ss.A(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ss.D(0, 0) == 0.0);
  }

  TEST_CASE("realization of a constant") {
    const StateSpaceModel ss = realize(TransferMatrix(1, 1, {RationalFunction(2.5)}));
    CHECK(ss.states() == 0);
    CHECK(ss.D(0, 0) == 2.5);
  }

  TEST_CASE("realization rejects an improper entry") {
    CHECK_THROWS_AS(realize(TransferMatrix(1, 1, {RationalFunction(Polynomial({0.0, 1.0}))})), std::domain_error);
  }

  TEST_CASE("observer realizations match their transfer matrices") {
    // state count: one per pole of each nonzero entry
    std::size_t want_states = 0;
    for (const auto& e : oracle::kObserver0) want_states += e.poles.size();
    const StateSpaceModel ss0 = realize(observers()[0]);
    CHECK(static_cast<std::size_t>(ss0.states()) == want_states);
    for (const auto& g : observers()) {
      const StateSpaceModel ss = realize(g);
      double worst = 0.0;
      for (double w : testing::log_space(0.1, 1e4, 20)) {
        const Eigen::MatrixXcd want = g.eval(Complex(0, w));
        worst = std::max(worst, (ss.eval(Complex(0, w)) - want).norm() / want.norm());
      }
      CHECK(worst < 1e-6);
    }
  }

  TEST_CASE("bilinear transform of a scalar pole") {
    StateSpaceModel ss;
    ss.A = Eigen::MatrixXd::Constant(1, 1, -1.0);
    ss.B = Eigen::MatrixXd::Constant(1, 1, 1.0);
    ss.C = Eigen::MatrixXd::Constant(1, 1, 1.0);
    ss.D = Eigen::MatrixXd::Zero(1, 1);
    const DiscreteFilter f = discretize(ss, 0.01);
    CHECK(rel_err(f.Ad()(0, 0), oracle::kTustinPole) < 1e-14);
    CHECK(f.spectral_radius() < 1.0);
    CHECK(f.state().norm() == 0.0);
    CHECK_THROWS_AS(discretize(ss, 0.0), std::invalid_argument);
    ss.A(0, 0) = 200.0;
    CHECK_THROWS_AS(discretize(ss, 0.01), std::domain_error);
  }

  TEST_CASE("discrete observers track the continuous response well below Nyquist") {
    const double ts = 1e-4;
    for (const auto& g : observers()) {
      const StateSpaceModel ss = realize(g);
      const DiscreteFilter f = discretize(ss, ts);
      CHECK(f.spectral_radius() < 1.0);
      const Eigen::MatrixXcd c = ss.eval(Complex(0, 0.1 / ts));
      const Eigen::MatrixXcd d = f.freq_response(0.1 / ts);
      for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j) {
          if (std::abs(c(i, j)) == 0.0) continue;
          CHECK(std::abs(d(i, j) - c(i, j)) / std::abs(c(i, j)) < 0.01);
        }
    }
  }

  TEST_CASE("property: discretized observers are BIBO stable") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (DiscreteFilter f : prototype()->filters) {
      double first = 0.0, second = 0.0;
      const int n = 1000000;
      for (int k = 0; k < n; ++k) {
        const Eigen::VectorXd y = f.step(Eigen::Vector2d(u(rng), u(rng)));
        REQUIRE(y.allFinite());
        (k < n / 2 ? first : second) = std::max(k < n / 2 ? first : second, y.cwiseAbs().maxCoeff());
      }
      INFO("peak output " << first << " then " << second);
      CHECK(second <= 2.0 * first);
    }
  }

  TEST_CASE("weight examples") {
    check_weights(60.0, {0.0051 / 0.0080, 0.0029 / 0.0080, 0.0});
    CHECK(select_weights(60.0, layout())[0] == doctest::Approx(0.6375).epsilon(1e-12));
    check_weights(180.0, {0.0, 0.5, 0.5});
    check_weights(120.0, {0.0, 1.0, 0.0});
    check_weights(0.0, {1.0, 0.0, 0.0});
    check_weights(330.0, {1.0, 0.0, 0.0});
    check_weights(-30.0, {1.0, 0.0, 0.0});
    check_weights(240.0, {0.0, 0.0, 1.0});
  }

  TEST_CASE("weights at the window edges are the table endpoint blends") {
    check_weights(50.0, {0.0060 / 0.0083, 0.0023 / 0.0083, 0.0});
    check_weights(70.0, {0.0041 / 0.0074, 0.0033 / 0.0074, 0.0});
    CHECK(select_weights(70.0, layout())[0] == doctest::Approx(0.554).epsilon(1e-3));
    check_weights(170.0, {0.0, 0.0060 / 0.0101, 0.0041 / 0.0101});
    check_weights(190.0, {0.0, 0.0041 / 0.0101, 0.0060 / 0.0101});
    check_weights(290.0, {0.0041 / 0.0074, 0.0, 0.0033 / 0.0074});
    check_weights(310.0, {0.0060 / 0.0083, 0.0, 0.0023 / 0.0083});
  }

  TEST_CASE("property: weights sum to one with at most two active") {
    for (int k = 0; k < 36000; ++k) {
      const Eigen::VectorXd w = select_weights(0.01 * k, layout());
      CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((w.array() > 0.0).count() <= 2);
      CHECK((w.array() >= 0.0).all());
    }
  }

  TEST_CASE("property: weights are continuous away from the window edges") {
    const std::array<double, 6> edges{50.0, 70.0, 170.0, 190.0, 290.0, 310.0};
    double worst = 0.0;
    for (int k = 0; k < 36000; ++k) {
      const double a = 0.01 * k, b = 0.01 * (k + 1);
      bool crosses = false;
      for (double e : edges) crosses = crosses || (a < e + 1e-9 && b > e - 1e-9);
      if (crosses) continue;
      worst = std::max(worst, (select_weights(b, layout()) - select_weights(a, layout())).cwiseAbs().maxCoeff());
    }
    INFO("largest step " << worst);
    CHECK(worst < 0.01);
  }

  TEST_CASE("weights jump at the window edges") {
    // documented: the blend does not reach the single-observer indicator
    const Eigen::VectorXd in = select_weights(70.0, layout());
    const Eigen::VectorXd out = select_weights(70.01, layout());
    CHECK(out[1] == 1.0);
    CHECK((out - in).cwiseAbs().maxCoeff() == doctest::Approx(0.0041 / 0.0074).epsilon(1e-12));
  }

  TEST_CASE("zero error leaves the bank coasting") {
    ObserverBank bank(*prototype());
    const VehicleState s0{1.0, 2.0, 10.0, deg2rad(30.0)};
    bank.reset(s0);
    VehicleState ballistic = s0;
    for (int k = 0; k < 100; ++k) {
      const BankOutput out = bank.step(measure(bank.estimate()));
      ballistic = integrate_step(ballistic, ControlInput{}, data().vehicle, prototype()->ts);
      CHECK(out.u_hat.steer == 0.0);
      CHECK(out.u_hat.accel == 0.0);
    }
    CHECK(bank.estimate().x == ballistic.x);
    CHECK(bank.estimate().y == ballistic.y);
    CHECK(bank.estimate().heading == ballistic.heading);
  }

  TEST_CASE("bank at zero heading uses the first observer alone") {
    ObserverBank bank(*prototype());
    bank.reset({0, 0, 10, 0});
    const BankOutput out = ycoo_step(bank, {0.01, 0.0});
    CHECK(out.weights[0] == 1.0);
    CHECK(out.weights[1] == 0.0);
    CHECK(out.weights[2] == 0.0);
    REQUIRE(bank.outputs().size() == 3);
    CHECK(out.u_hat.steer == bank.outputs()[0].steer);
  }

  TEST_CASE("bank tracks a constant-velocity truth without error") {
    ObserverBank bank(*prototype());
    const VehicleState truth0{0.0, 0.0, 10.0, 0.0};
    // offsets well inside the linear range of the lateral loop
    bank.reset({0.005, -0.002, 10.0, 0.0});
    VehicleState truth = truth0;
    const double ts = prototype()->ts;
    for (int k = 0; k < 50000; ++k) {
      ycoo_step(bank, measure(truth));
      truth = integrate_step(truth, ControlInput{}, data().vehicle, ts);
    }
    const VehicleState& e = bank.estimate();
    INFO("position error " << e.x - truth.x << ", " << e.y - truth.y);
    CHECK(std::abs(e.x - truth.x) < 1e-6);
    CHECK(std::abs(e.y - truth.y) < 1e-6);
    CHECK(std::abs(e.speed - truth.speed) < 1e-6);
    CHECK(std::abs(e.heading - truth.heading) < 1e-6);
  }

  TEST_CASE("straight run stays within a millimetre after one second") {
    ScenarioOverrides o;
    o.noise_power = 0.0;
    const ObserverSetup setup = ObserverSetup::from(data());
    const SimTrace t = run_closed_loop(build_scenario(ScenarioKind::straight, o), ObserverKind::ycoo, setup);
    double worst = 0.0;
    for (const auto& r : t.rows) {
      if (r.t < 1.0) continue;
      worst = std::max({worst, std::abs(r.est.x - r.truth.x), std::abs(r.est.y - r.truth.y),
                        std::abs(r.est.speed - r.truth.speed), std::abs(r.est.heading - r.truth.heading)});
    }
    INFO("largest state error after 1 s: " << worst);
    CHECK(worst < 1e-3);
  }

  TEST_CASE("gain hysteresis") {
    LuenbergerGainSet g(data().luenberger);
    CHECK(g.current() == -1);
    g.select(0.0);
    CHECK(g.current() == 0);
    g.select(50.0);
    CHECK(g.current() == 0);
    g.select(61.0);
    CHECK(g.current() == 1);
    g.select(59.0);
    CHECK(g.current() == 1);
    g.select(161.0);
    CHECK(g.current() == 2);
    g.reset();
    CHECK(select_luenberger_gain(g, 30.0) == data().luenberger[0].gain);
    CHECK(g.current() == 0);
    g.reset();
    g.select(-20.0);
    CHECK(g.current() == 0);
    g.select(335.0);
    CHECK(g.current() == 0);
    g.select(320.0);
    CHECK(g.current() == 0);
    g.select(290.0);
    CHECK(g.current() == 3);
    CHECK_THROWS_AS(LuenbergerGainSet({data().luenberger[0]}).select(180.0), std::domain_error);
  }

  TEST_CASE("zero innovation reduces to model propagation") {
    LuenbergerGainSet g(data().luenberger);
    const VehicleState still{3.0, 4.0, 0.0, 0.4};
    const VehicleState a = luenberger_step(still, g, measure(still), {0.1, 0.0}, data().vehicle, 1e-4);
    const VehicleState b = integrate_step(still, {0.1, 0.0}, data().vehicle, 1e-4);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.speed == b.speed);
    CHECK(a.heading == b.heading);
  }

  TEST_CASE("baseline estimate converges at a fixed operating point") {
    const VehicleParams p = data().vehicle;
    LuenbergerGainSet g(data().luenberger);
    VehicleState truth{0, 0, 10, 0};
    VehicleState est{0.3, -0.2, 10.5, 0.02};
    const double e0 = (est.vec() - truth.vec()).norm();
    for (int k = 0; k < 20000; ++k) {
      const Measurement y = measure(truth);
      est = luenberger_step(est, g, y, {}, p, 1e-4);
      truth = integrate_step(truth, ControlInput{}, p, 1e-4);
    }
    CHECK(g.current() == 0);
    const double e2 = (est.vec() - truth.vec()).norm();
    INFO("error ratio " << e2 / e0);
    CHECK(e2 < 0.01 * e0);
  }

  TEST_CASE("published gains stabilize their regions") {
    const auto margins = verify_gain_stability(data().luenberger, data().vehicle);
    REQUIRE(margins.size() == 4);
    for (const auto& m : margins) {
      CAPTURE(m.region);
      CHECK(m.stable);
      CHECK(m.worst_real < 0.0);
      CHECK(std::isfinite(m.gain_norm));
      CHECK(m.gain_norm > 0.0);
    }
    // direct eigenvalue check at the first design point
    const Mat4 a = jacobian_A({0, 0, 10, 0}, {0, 0}, data().vehicle);
    const Mat4 cl = a - data().luenberger[0].gain * innovation_matrix();
    const Eigen::Vector4cd ev = cl.eigenvalues();
    for (int k = 0; k < 4; ++k) CHECK(ev[k].real() < 0.0);
    // norm from the singular values
    const Eigen::JacobiSVD<Mat42> svd(data().luenberger[0].gain);
    CHECK(margins[0].gain_norm == doctest::Approx(svd.singularValues()[0]).epsilon(1e-12));
  }

  TEST_CASE("zero gain is not stabilizing") {
    auto regions = data().luenberger;
    for (auto& r : regions) r.gain.setZero();
    for (const auto& m : verify_gain_stability(regions, data().vehicle)) {
      CHECK_FALSE(m.stable);
      CHECK(m.worst_real >= 0.0);
    }
  }
}
