// Serial reference kernels against their OpenMP counterparts.

#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "spinflip/elliptic.hpp"
#include "spinflip/experiments.hpp"
#include "spinflip/parallel.hpp"
#include "spinflip/spin.hpp"

namespace {

using namespace spinflip;

constexpr double kPeriod = 2.0 * std::numbers::pi;

Scenario elliptical() { return make_scenario({1.0, 0.3, 1.2}, {2.0, 1}, {}); }

std::vector<double> eta_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 8; ++i) grid.push_back(0.5 * i);
  return grid;
}

ScanSettings scan_settings(int workers) {
  ScanSettings s;
  s.steps_per_period = 500;
  s.workers = workers;
  return s;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto grid = eta_grid();
  for (auto _ : state) benchmark::DoNotOptimize(scan_eta_serial(grid, 2.0, scan_settings(1)));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto grid = eta_grid();
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(scan_eta(grid, 2.0, scan_settings(workers)));
}

void BM_FieldSerial(benchmark::State& state) {
  const Scenario s = elliptical();
  const auto times = uniform_times(20.0 * kPeriod, kPeriod, 500);
  for (auto _ : state) benchmark::DoNotOptimize(sample_field_serial(times, s));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}

void BM_FieldParallel(benchmark::State& state) {
  const Scenario s = elliptical();
  const auto times = uniform_times(20.0 * kPeriod, kPeriod, 500);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_field(times, s, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}

void BM_TrajectorySerial(benchmark::State& state) {
  const Scenario s = elliptical();
  const auto times = uniform_times(5.0 * kPeriod, kPeriod, 100);
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory_serial(times, s));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}

void BM_TrajectoryParallel(benchmark::State& state) {
  const Scenario s = elliptical();
  const auto times = uniform_times(5.0 * kPeriod, kPeriod, 100);
  const int workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_trajectory(times, s, workers));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(times.size()));
}

void BM_SpinStep(benchmark::State& state) {
  const Scenario s = elliptical();
  const double dt = step_length(s, kDefaultStepsPerPeriod);
  SpinState psi;
  double t = 0.0;
  for (auto _ : state) {
    psi = step(psi, t, dt, s);
    t += dt;
  }
  benchmark::DoNotOptimize(psi);
}

void BM_JacobiEval(benchmark::State& state) {
  const elliptic::ModulusSq m(0.7);
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elliptic::jacobi_eval(u, m));
    u += 0.37;
  }
}

BENCHMARK(BM_ScanSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectorySerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrajectoryParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpinStep);
BENCHMARK(BM_JacobiEval);

}  // namespace

BENCHMARK_MAIN();
