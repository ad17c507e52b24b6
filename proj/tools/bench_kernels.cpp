// Serial vs OpenMP kernels: gain quadrature panels, full gain evaluation,
// and the independent-scenario batch runner.

#include <benchmark/benchmark.h>

#include <cmath>
#include <functional>

#include "spikectl/kernels.hpp"
#include "spikectl/matrixkit.hpp"
#include "spikectl/pipeline.hpp"
#include "spikectl/scenario.hpp"

using namespace spikectl;

namespace {

const Scenario& reactor() {
  static const Scenario s = preset("batch-reactor-I");
  return s;
}

kernels::ScalarFn gain_integrand() {
  const Scenario& s = reactor();
  const Matrix abar = s.plant->closed_loop(s.controller->K);
  const Matrix ab = abar * s.plant->B();
  return [abar, ab](double t) { return induced_two_norm(mat_exp(abar, t) * ab); };
}

void BM_PanelsSerial(benchmark::State& state) {
  const auto f = gain_integrand();
  const auto panels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::panel_integrals_serial(f, 0.0, 5.0 / panels, panels));
}

void BM_PanelsOmp(benchmark::State& state) {
  const auto f = gain_integrand();
  const auto panels = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::panel_integrals_omp(f, 0.0, 5.0 / panels, panels));
}

void BM_Gain(benchmark::State& state) {
  const Scenario& s = reactor();
  const Matrix abar = s.plant->closed_loop(s.controller->K);
  GainOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(isiss_gain(abar, s.plant->B(), opts));
}

void BM_Batch(benchmark::State& state) {
  Scenario s = preset("scalar-demo");
  s.sim.t_end = 1.0;
  const std::function<double(std::size_t)> job = [&](std::size_t i) {
    Scenario local = s;
    local.x0[0] = 0.5 + 0.1 * static_cast<double>(i);
    return run_loop(local).sim.max_state_error();
  };
  const auto count = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    if (state.range(0) != 0)
      benchmark::DoNotOptimize(kernels::run_batch_omp<double>(count, job));
    else
      benchmark::DoNotOptimize(kernels::run_batch_serial<double>(count, job));
  }
}

}  // namespace

BENCHMARK(BM_PanelsSerial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PanelsOmp)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Gain)->ArgName("omp")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Batch)->ArgNames({"omp", "runs"})->Args({0, 16})->Args({1, 16})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
