#include <ycoo/design_data.hpp>
#include <ycoo/luenberger.hpp>
#include <ycoo/observer_bank.hpp>
#include <ycoo/scenario.hpp>
#include <ycoo/simulation.hpp>
#include <ycoo/youla_design.hpp>

#include <benchmark/benchmark.h>

using namespace ycoo;

namespace {

const ObserverSetup& setup() {
  static const ObserverSetup s = ObserverSetup::from(embedded_design_data());
  return s;
}

void BM_DesignPipeline(benchmark::State& state) {
  const auto& o = embedded_design_data().observers.at(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(design_observer(o.op, o.params, embedded_design_data().vehicle));
}
BENCHMARK(BM_DesignPipeline)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_BankPrototype(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ObserverSetup::from(embedded_design_data()));
}
BENCHMARK(BM_BankPrototype)->Unit(benchmark::kMillisecond);

void BM_YcooStep(benchmark::State& state) {
  ObserverBank bank(*setup().bank);
  bank.reset({0, 0, 10, 0});
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    benchmark::DoNotOptimize(ycoo_step(bank, {0.0, x}));
  }
}
BENCHMARK(BM_YcooStep);

void BM_LuenbergerStep(benchmark::State& state) {
  LuenbergerGainSet gains(setup().regions);
  VehicleState est{0, 0, 10, 0};
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-3;
    est = luenberger_step(est, gains, {0.0, x}, {0.0, 0.0}, setup().model, 1e-4);
    benchmark::DoNotOptimize(est);
  }
}
BENCHMARK(BM_LuenbergerStep);

void BM_Simulate(benchmark::State& state) {
  const auto kind = all_scenarios().at(static_cast<std::size_t>(state.range(0)));
  const ScenarioSpec spec = build_scenario(kind);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(spec, setup()));
  state.SetLabel(std::string(to_string(kind)));
}
BENCHMARK(BM_Simulate)->DenseRange(0, 4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
