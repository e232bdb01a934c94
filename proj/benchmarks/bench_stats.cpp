#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fraudscope/metrics.hpp"
#include "fraudscope/stats.hpp"
#include "fraudscope/synth.hpp"

using namespace fraudscope;

namespace {

std::vector<double> draws(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(gen);
  return v;
}

void BM_MannWhitneyNormal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = draws(n, 1), b = draws(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MannWhitneyNormal)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_MannWhitneyExact(benchmark::State& state) {
  const auto a = draws(8, 3), b = draws(static_cast<std::size_t>(state.range(0)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(mann_whitney_exact_p(a, b));
}
BENCHMARK(BM_MannWhitneyExact)->Arg(8)->Arg(64)->Arg(400);

void BM_KendallTauA(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = draws(n, 5), y = draws(n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(kendall_tau_a(x, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KendallTauA)->RangeMultiplier(4)->Range(64, 65536)->Complexity(benchmark::oNLogN);

void BM_CorrelationMatrix(benchmark::State& state) {
  SynthConfig c;
  c.n_per_class = static_cast<std::size_t>(state.range(0));
  const auto obs = make_observations(generate_dataset(c));
  for (auto _ : state) benchmark::DoNotOptimize(correlation_matrix(obs));
}
BENCHMARK(BM_CorrelationMatrix)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_RocAuc(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto scores = draws(n, 7);
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i % 2);
  for (auto _ : state) benchmark::DoNotOptimize(roc_auc(labels, scores));
}
BENCHMARK(BM_RocAuc)->Arg(1000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
