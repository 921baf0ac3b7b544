#include <benchmark/benchmark.h>

#include "thermo/diagnostics.hpp"
#include "thermo/dynamics.hpp"
#include "thermo/oracle.hpp"
#include "thermo/scenarios.hpp"

namespace {

thermo::SimState mixed(int n, const char* name = "mixed") {
  thermo::ScenarioSpec spec;
  spec.name = name;
  spec.n = n;
  return thermo::make_initial_data(spec);
}

void BM_Step(benchmark::State& state) {
  const auto p = thermo::ModelParams::laplacian(1.0);
  auto s = mixed(static_cast<int>(state.range(0)));
  thermo::StepperConfig cfg;
  const thermo::SplitStepper stepper(s.grid_ptr(), p, cfg.dt, cfg.dealias);
  for (auto _ : state) stepper.advance(s, cfg);
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64);

void BM_StepLame(benchmark::State& state) {
  const auto p = thermo::ModelParams::lame_operator(1.0, 1.0, 0.5);
  auto s = mixed(static_cast<int>(state.range(0)), "lame-mixed");
  thermo::StepperConfig cfg;
  const thermo::SplitStepper stepper(s.grid_ptr(), p, cfg.dt, cfg.dealias);
  for (auto _ : state) stepper.advance(s, cfg);
}
BENCHMARK(BM_StepLame)->Arg(32);

void BM_RecorderEvaluate(benchmark::State& state) {
  const auto p = thermo::ModelParams::laplacian(1.0);
  const auto s = mixed(32);
  const thermo::Recorder rec(s, p);
  for (auto _ : state) benchmark::DoNotOptimize(rec.evaluate(s));
}
BENCHMARK(BM_RecorderEvaluate);

void BM_GalerkinRhs(benchmark::State& state) {
  const auto p = thermo::ModelParams::laplacian(1.0);
  const auto g = thermo::build_galerkin(mixed(16), p, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thermo::galerkin_rhs(g, p));
}
BENCHMARK(BM_GalerkinRhs)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
