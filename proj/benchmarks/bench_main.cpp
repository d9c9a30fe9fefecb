#include <benchmark/benchmark.h>

#include "padereg/padereg.hpp"

using namespace padereg;

namespace {

const Dataset& table1() {
  static const Dataset d = read_points(PADEREG_DATA_DIR "/table1.csv");
  return d;
}

FitConfig cdf_config(double lambda) {
  FitConfig c = FitConfig::cdf(6, 0, 12);
  c.lambda = lambda;
  c.der_grid = DerivativeGridSpec{0.0, 2.0, 40};
  c.pole_interval = std::pair{0.0, 2.0};
  return c;
}

void BM_CanonicalAdd(benchmark::State& state) {
  const auto f = resonance_term_lower();
  const auto g = resonance_term_upper();
  for (auto _ : state) benchmark::DoNotOptimize(add(f, g));
}
BENCHMARK(BM_CanonicalAdd);

void BM_SolveNormalSystem(benchmark::State& state) {
  const auto data = sample_noisy(resonance, uniform_grid(-1.0, 1.0, 200), {0.0, 0.05, 1});
  FitConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.m = static_cast<int>(state.range(0));
  const auto sys = assemble_normal_system(data, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dense(sys));
}
BENCHMARK(BM_SolveNormalSystem)->Arg(2)->Arg(4)->Arg(8)->Arg(12);

void BM_FitRegularizedTable1(benchmark::State& state) {
  const auto cfg = cdf_config(0.0025);
  for (auto _ : state) benchmark::DoNotOptimize(fit_regularized(table1(), cfg));
}
BENCHMARK(BM_FitRegularizedTable1);

void BM_LambdaSweepTable1(benchmark::State& state) {
  const std::vector<double> grid{0.0, 0.0005, 0.001, 0.002, 0.0025, 0.005, 0.01};
  const auto cfg = cdf_config(0.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(lambda_sweep(table1(), cfg, grid, DerivativeGridSpec{0.0, 2.0, 40}));
}
BENCHMARK(BM_LambdaSweepTable1)->Unit(benchmark::kMicrosecond);

void BM_GridSearchResonance(benchmark::State& state) {
  const auto data = sample_noisy(resonance, uniform_grid(-1.0, 1.0, 20), {0.0, 0.05, 1});
  SearchSpace space;
  space.n_hi = space.m_hi = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(data, space));
}
BENCHMARK(BM_GridSearchResonance)->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

void BM_RationalMttf(benchmark::State& state) {
  const auto model = fit_regularized(table1(), cdf_config(0.0025)).model;
  for (auto _ : state) benchmark::DoNotOptimize(mttf(model, table1().max_x()));
}
BENCHMARK(BM_RationalMttf)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
