#include <benchmark/benchmark.h>

#include <cmath>

#include "qcorr/dynamics.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

static void BM_Analytic601(benchmark::State& state) {
  const AtomPairParams p(0.6737);
  const auto times = uniform_grid(6.0, 601);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_analytic(std::sqrt(0.9), p, times));
}
BENCHMARK(BM_Analytic601)->Unit(benchmark::kMicrosecond);

static void BM_Integrate601(benchmark::State& state) {
  Rng rng(6);
  const DensityMatrix rho0 = random_density_matrix(rng);
  const AtomPairParams p(0.6737);
  const auto times = uniform_grid(6.0, 601);
  for (auto _ : state) benchmark::DoNotOptimize(integrate(rho0, p, times));
}
BENCHMARK(BM_Integrate601)->Unit(benchmark::kMillisecond);
