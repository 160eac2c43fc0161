#include <benchmark/benchmark.h>

#include "qcorr/measures.hpp"
#include "qcorr/random.hpp"

using namespace qcorr;

static void BM_HermEig4(benchmark::State& state) {
  Rng rng(1);
  const CMat4 m = random_density_matrix(rng).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(herm_eig(m));
}
BENCHMARK(BM_HermEig4);

static void BM_QdClosedForm(benchmark::State& state) {
  Rng rng(2);
  const XState x = random_x_state(rng);
  for (auto _ : state) benchmark::DoNotOptimize(qd_x(x));
}
BENCHMARK(BM_QdClosedForm);

static void BM_QdBruteforce(benchmark::State& state) {
  Rng rng(3);
  const DensityMatrix rho = random_density_matrix(rng);
  const SphereGrid grid = state.range(0) ? SphereGrid::production() : SphereGrid::fast();
  for (auto _ : state) benchmark::DoNotOptimize(qd_bruteforce(rho, grid));
}
BENCHMARK(BM_QdBruteforce)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_CorrelationsX(benchmark::State& state) {
  Rng rng(4);
  const DensityMatrix rho = random_x_state(rng).to_density();
  for (auto _ : state) benchmark::DoNotOptimize(correlations(rho));
}
BENCHMARK(BM_CorrelationsX);

static void BM_CorrelationsGeneric(benchmark::State& state) {
  Rng rng(5);
  const DensityMatrix rho = random_density_matrix(rng);
  ReportOptions opts;
  opts.qd_grid = SphereGrid::fast();
  for (auto _ : state) benchmark::DoNotOptimize(correlations(rho, opts));
}
BENCHMARK(BM_CorrelationsGeneric)->Unit(benchmark::kMicrosecond);

static void BM_ConcurrenceGeneric(benchmark::State& state) {
  Rng rng(7);
  const DensityMatrix rho = random_density_matrix(rng);
  for (auto _ : state) benchmark::DoNotOptimize(concurrence(rho));
}
BENCHMARK(BM_ConcurrenceGeneric);
