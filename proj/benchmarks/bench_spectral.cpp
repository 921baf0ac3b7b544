#include <benchmark/benchmark.h>

#include <cmath>

#include "thermo/field.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/operators.hpp"

namespace {

thermo::ScalarField sample(int d, int n) {
  return thermo::ScalarField::from_function(thermo::make_uniform_grid(d, n), [](const std::array<double, 3>& x) {
    return std::sin(x[0]) * std::cos(2.0 * x[1]) + 0.3 * std::cos(x[0] + x[2]);
  });
}

thermo::VectorField sample_vector(int d, int n) {
  std::vector<thermo::ScalarField> comps;
  for (int c = 0; c < d; ++c) comps.push_back(sample(d, n));
  return thermo::VectorField(std::move(comps));
}

void BM_ForwardInverse2D(benchmark::State& state) {
  const auto f = sample(2, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto back = thermo::inverse(thermo::forward(f));
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_ForwardInverse2D)->Arg(32)->Arg(64)->Arg(128);

void BM_ForwardInverse3D(benchmark::State& state) {
  const auto f = sample(3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    auto back = thermo::inverse(thermo::forward(f));
    benchmark::DoNotOptimize(back);
  }
}
BENCHMARK(BM_ForwardInverse3D)->Arg(16)->Arg(32);

void BM_Gradient(benchmark::State& state) {
  const auto f = sample(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thermo::gradient(f));
}
BENCHMARK(BM_Gradient)->Arg(32)->Arg(64);

void BM_Hessian(benchmark::State& state) {
  const auto f = sample(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thermo::hessian(f));
}
BENCHMARK(BM_Hessian)->Arg(32)->Arg(64);

void BM_LameApply(benchmark::State& state) {
  const auto v = sample_vector(2, static_cast<int>(state.range(0)));
  const thermo::LameModuli m{1.0, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(thermo::lame_apply(v, m));
}
BENCHMARK(BM_LameApply)->Arg(32)->Arg(64);

void BM_Helmholtz(benchmark::State& state) {
  const auto v = sample_vector(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(thermo::helmholtz_project(v));
}
BENCHMARK(BM_Helmholtz)->Arg(32)->Arg(64);

}  // namespace
