#include "ycoo/simulation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace ycoo {

std::string_view to_string(ObserverKind k) { return k == ObserverKind::ycoo ? "ycoo" : "luenberger"; }

std::string_view to_string(InitMode m) {
  switch (m) {
    case InitMode::truth: return "truth";
    case InitMode::first_sample: return "first_sample";
    case InitMode::two_sample: return "two_sample";
  }
  return "?";
}

InitMode parse_init_mode(std::string_view name) {
  if (name == "truth") return InitMode::truth;
  if (name == "first_sample") return InitMode::first_sample;
  if (name == "two_sample") return InitMode::two_sample;
  throw std::invalid_argument("unknown init mode: " + std::string(name));
}

ObserverSetup ObserverSetup::from(const DesignData& data, ObserverSource source) {
  ObserverSetup s;
  s.bank = std::make_shared<const BankPrototype>(BankPrototype::from(data, source));
  s.regions = data.luenberger;
  s.model = data.vehicle;
  return s;
}

Measurement sensor_sample(const VehicleState& truth, double variance, std::mt19937_64& rng) {
  Measurement m = measure(truth);
  if (variance > 0.0) {
    std::normal_distribution<double> n(0.0, std::sqrt(variance));
    m.y += n(rng);
    m.x += n(rng);
  }
  return m;
}

namespace {

void check_finite(const VehicleState& s, double t, std::string_view who) {
  const Vec4 v = s.vec();
  for (int k = 0; k < 4; ++k)
    if (!std::isfinite(v[k]) || std::abs(v[k]) > 1e6) {
      std::ostringstream msg;
      msg << who << " diverged at t=" << t << " s: state [" << v.transpose() << "]";
      throw SimulationDiverged(msg.str());
    }
}

}  // namespace

RunResult simulate(const ScenarioSpec& spec, const ObserverSetup& setup, ObserverSelection which) {
  spec.validate();
  if (which.ycoo && !setup.bank) throw std::invalid_argument("simulate: observer bank missing");
  const double dt = spec.dt;
  if (which.ycoo && std::abs(setup.bank->ts - dt) > 1e-15)
    throw std::invalid_argument("simulate: bank sample period differs from the integration step");

  const std::size_t steps = spec.steps();
  const std::size_t sps = spec.steps_per_sample();
  const double variance = spec.noise_variance();
  std::mt19937_64 rng(spec.seed);

  std::optional<ObserverBank> bank;
  if (which.ycoo) bank.emplace(*setup.bank);
  LuenbergerGainSet gains;
  if (which.luenberger) gains = LuenbergerGainSet(setup.regions);

  RunResult out;
  auto make_trace = [&](ObserverKind k) {
    SimTrace t;
    t.observer = k;
    t.scenario = spec.kind;
    t.seed = spec.seed;
    t.sample_period = spec.sensor_period;
    t.rows.reserve(steps / sps + 1);
    return t;
  };
  if (which.ycoo) out.ycoo = make_trace(ObserverKind::ycoo);
  if (which.luenberger) out.luenberger = make_trace(ObserverKind::luenberger);

  VehicleState truth = spec.initial;
  VehicleState lu_est;
  Measurement y{};
  Measurement first{};
  bool started = false;
  std::size_t samples = 0;
  BankOutput last{};
  last.weights = Eigen::VectorXd::Zero(3);
  ControlInput lu_u{};

  auto start_observers = [&](const VehicleState& s0) {
    if (bank) bank->reset(s0);
    lu_est = s0;
    gains.reset();
    started = true;
  };

  for (std::size_t n = 0; n <= steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const bool tick = n % sps == 0;
    const ControlInput u_now = spec.input(t, t + 0.5 * dt);
    if (tick) {
      y = sensor_sample(truth, variance, rng);
      if (!started) {
        switch (setup.init) {
          case InitMode::truth: start_observers(truth); break;
          case InitMode::first_sample:
            start_observers({y.x, y.y, spec.initial.speed, spec.initial.heading});
            break;
          case InitMode::two_sample:
            if (samples == 0) {
              first = y;
              if (bank) bank->reset({y.x, y.y, 0.0, 0.0});
              lu_est = {y.x, y.y, 0.0, 0.0};
            } else {
              const double dx = y.x - first.x;
              const double dy = y.y - first.y;
              start_observers({y.x, y.y, std::hypot(dx, dy) / spec.sensor_period, std::atan2(dy, dx)});
            }
            break;
        }
      }
      ++samples;
    }

    const VehicleState bank_before = bank ? bank->estimate() : VehicleState{};
    const VehicleState lu_before = lu_est;
    if (n < steps && started) {
      if (bank) {
        last = bank->step(y);
        check_finite(bank->estimate(), t, "ycoo");
      }
      if (which.luenberger) {
        lu_u = setup.luenberger_input == LuenbergerInput::truth ? u_now : ControlInput{};
        lu_est = luenberger_step(lu_est, gains, y, lu_u, setup.model, dt);
        check_finite(lu_est, t, "luenberger");
      }
    }

    if (tick) {
      if (out.ycoo) {
        TraceRow r{t, truth, bank_before, y, u_now, last.u_hat, {}, 0};
        for (Eigen::Index k = 0; k < std::min<Eigen::Index>(3, last.weights.size()); ++k)
          r.weights[static_cast<std::size_t>(k)] = last.weights(k);
        out.ycoo->rows.push_back(r);
      }
      if (out.luenberger)
        out.luenberger->rows.push_back({t, truth, lu_before, y, u_now, lu_u, {}, gains.current() + 1});
    }

    if (n < steps) {
      truth = integrate_step(truth, [&](double tau) { return spec.input(tau, t + 0.5 * dt); }, t,
                             spec.truth_params, dt);
      check_finite(truth, t, "truth");
    }
  }
  return out;
}

SimTrace run_closed_loop(const ScenarioSpec& spec, ObserverKind observer, const ObserverSetup& setup) {
  ObserverSelection w{observer == ObserverKind::ycoo, observer == ObserverKind::luenberger};
  RunResult r = simulate(spec, setup, w);
  return observer == ObserverKind::ycoo ? std::move(*r.ycoo) : std::move(*r.luenberger);
}

std::vector<RunResult> monte_carlo(const ScenarioSpec& spec, const ObserverSetup& setup, ObserverSelection which,
                                   std::size_t n_runs, std::uint64_t base_seed, unsigned threads) {
  if (n_runs == 0) throw std::invalid_argument("monte_carlo: need at least one run");
  std::vector<RunResult> out(n_runs);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_runs));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k = next++; k < n_runs; k = next++) {
      try {
        ScenarioSpec s = spec;
        s.seed = base_seed + k;
        out[k] = simulate(s, setup, which);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<RobustnessRun> robustness_sweep(const ScenarioSpec& base, const std::vector<double>& factors,
                                            const ObserverSetup& setup, ObserverSelection which,
                                            WheelbaseScaling scaling) {
  if (factors.empty()) throw std::invalid_argument("robustness_sweep: no factors");
  std::vector<RobustnessRun> out;
  for (double f : factors) {
    ScenarioSpec s = base;
    s.noise_power = 0.0;
    s.truth_params = scale_wheelbase(base.truth_params, f, scaling);
    RobustnessRun r;
    r.factor = f;
    r.truth_params = s.truth_params;
    r.result = simulate(s, setup, which);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ycoo
