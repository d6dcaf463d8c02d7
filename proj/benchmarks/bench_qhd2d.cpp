#include <benchmark/benchmark.h>

#include <cmath>

#include "qhd2d/config.hpp"
#include "qhd2d/initial_conditions.hpp"
#include "qhd2d/poisson.hpp"
#include "qhd2d/polar.hpp"
#include "qhd2d/propagator.hpp"

namespace {

qhd2d::WaveField gaussian(int n, double l) {
  qhd2d::IcConfig ic;
  ic.params = {{"x0", 0.5 * l}, {"y0", 0.5 * l}};
  return qhd2d::make_initial_condition(ic, qhd2d::make_grid(n, n, l, l), 1.0);
}

void BM_StrangStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  qhd2d::WaveField psi = gaussian(n, 16.0);
  qhd2d::StepParams params;
  for (auto _ : state) {
    psi = qhd2d::strang_step(psi, params);
    benchmark::DoNotOptimize(psi[0]);
  }
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_StrangStep)->Arg(64)->Arg(128)->Arg(256);

void BM_PoissonPeriodic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qhd2d::RealField rho = gaussian(n, 16.0).density();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qhd2d::solve(rho, qhd2d::PoissonMode::periodic_zero_mean).v[0]);
  }
}
BENCHMARK(BM_PoissonPeriodic)->Arg(64)->Arg(128)->Arg(256);

void BM_PoissonFreeSpace(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qhd2d::RealField rho = gaussian(n, 16.0).density();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qhd2d::solve(rho, qhd2d::PoissonMode::free_space_padded).v[0]);
  }
}
BENCHMARK(BM_PoissonFreeSpace)->Arg(64)->Arg(128)->Arg(256);

void BM_PoissonOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qhd2d::RealField rho = gaussian(n, 16.0).density();
  for (auto _ : state) {
    benchmark::DoNotOptimize(qhd2d::solve(rho, qhd2d::PoissonMode::quadrature_oracle).v[0]);
  }
}
BENCHMARK(BM_PoissonOracle)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Moments(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const qhd2d::WaveField psi = gaussian(n, 16.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(qhd2d::moments(psi).j.x[0]);
  }
}
BENCHMARK(BM_Moments)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
