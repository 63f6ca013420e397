#include <benchmark/benchmark.h>

#include "uavplan/uavplan.hpp"

namespace {

const uavplan::Environment& urban() {
  static const auto env = *uavplan::preset("urban");
  return env;
}

void BM_KernelGamma(benchmark::State& state) {
  const double h_n = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(uavplan::kernel_gamma(urban(), h_n));
  }
}
BENCHMARK(BM_KernelGamma)->Arg(1)->Arg(50)->Arg(115)->Arg(300);

void BM_KernelGammaDerivative(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(uavplan::kernel_gamma_derivative(urban(), 1.0));
  }
}
BENCHMARK(BM_KernelGammaDerivative);

void BM_OptimalAltitude(benchmark::State& state) {
  const auto envs = uavplan::all_presets();
  const auto& env = envs[static_cast<std::size_t>(state.range(0))];
  for (auto _ : state) {
    benchmark::DoNotOptimize(uavplan::optimal_normalized_altitude(env));
  }
  state.SetLabel(env.name);
}
BENCHMARK(BM_OptimalAltitude)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_SimulateTrial(benchmark::State& state) {
  const uavplan::ServiceParams params{1.0, 1e10, 1.0};
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        uavplan::simulate_trial(urban(), 30.0, 0.1, 35.0, params, 42, trial++));
  }
}
BENCHMARK(BM_SimulateTrial);

}  // namespace

BENCHMARK_MAIN();
