#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "polyentropy/core.hpp"
#include "polyentropy/estimators.hpp"
#include "polyentropy/experiment.hpp"
#include "polyentropy/polyapprox.hpp"
#include "polyentropy/random.hpp"
#include "polyentropy/sampling.hpp"

namespace {

using namespace polyentropy;

void BM_RemezPhi(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi_approximation(degree).error());
  }
}
BENCHMARK(BM_RemezPhi)->Arg(6)->Arg(18)->Arg(40)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PolyTable(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  const EstimatorConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_poly_table(k, k, cfg).degree);
  }
}
BENCHMARK(BM_PolyTable)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

// One estimate on a fixed sample; the table is built once outside the loop.
void BM_PolyEstimate(benchmark::State& state) {
  const std::uint64_t k = 10000;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const EstimatorConfig cfg;
  const auto d = make_distribution(SyntheticSpec::parse("zipf:1", k));
  const auto h = sample_multinomial(d, n, Seed{1, 0});
  const auto table = make_poly_table(k, n, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(poly_entropy_estimate(h, nullptr, k, n, cfg, table));
  }
}
BENCHMARK(BM_PolyEstimate)->Arg(100)->Arg(10000)->Arg(1000000);

void BM_MillerMadow(benchmark::State& state) {
  const std::uint64_t k = 10000;
  const auto d = make_distribution(SyntheticSpec::parse("uniform", k));
  const auto h = sample_multinomial(d, static_cast<std::uint64_t>(state.range(0)), Seed{2, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(miller_madow(h));
  }
}
BENCHMARK(BM_MillerMadow)->Arg(10000)->Arg(1000000);

void BM_SampleMultinomial(benchmark::State& state) {
  const auto d = make_distribution(SyntheticSpec::parse("mix", 10000));
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_multinomial(d, n, Seed{3, stream++}).n());
  }
}
BENCHMARK(BM_SampleMultinomial)->Arg(1000)->Arg(1000000);

void BM_SamplePoissonized(benchmark::State& state) {
  const auto d = make_distribution(SyntheticSpec::parse("mix", 10000));
  const auto n = static_cast<double>(state.range(0));
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_poissonized(d, n, Seed{4, stream++}).n());
  }
}
BENCHMARK(BM_SamplePoissonized)->Arg(1000)->Arg(1000000);

void BM_PoissonVariate(benchmark::State& state) {
  CounterRng rng(Seed{5, 0});
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(poisson_variate(rng, mean));
  }
}
BENCHMARK(BM_PoissonVariate)->Arg(3)->Arg(100);

// One (dist, n) cell of the sweep with all three methods.
void BM_ExperimentCell(benchmark::State& state) {
  ExperimentSpec spec;
  spec.k = 10000;
  spec.dists = parse_dists("zipf:1", spec.k);
  spec.n_grid = {static_cast<std::uint64_t>(state.range(0))};
  spec.trials = 10;
  spec.methods = {Method::poly, Method::plugin, Method::mm};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(spec).size());
  }
}
BENCHMARK(BM_ExperimentCell)->Arg(500)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
