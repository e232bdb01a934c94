#include <benchmark/benchmark.h>

#include <random>

#include "fraudscope/discriminant.hpp"
#include "fraudscope/ensemble.hpp"
#include "fraudscope/logistic.hpp"
#include "fraudscope/tree.hpp"

using namespace fraudscope;

namespace {

struct Data {
  Eigen::MatrixXd x;
  std::vector<int> labels;
};

// 800 rows is the size of a matched 400 + 400 industry sample.
Data make_data(std::size_t n, std::size_t p) {
  std::mt19937_64 gen(42);
  std::normal_distribution<double> normal;
  Data d;
  d.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.labels[i] = static_cast<int>(i % 2);
    for (std::size_t j = 0; j < p; ++j) {
      d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = normal(gen) + 0.8 * d.labels[i];
    }
  }
  return d;
}

void BM_FitLda(benchmark::State& state) {
  const auto d = make_data(800, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_lda(d.x, d.labels));
}
BENCHMARK(BM_FitLda)->Arg(4)->Arg(10);

void BM_FitQda(benchmark::State& state) {
  const auto d = make_data(800, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fit_qda(d.x, d.labels));
}
BENCHMARK(BM_FitQda)->Arg(4)->Arg(10);

void BM_FitLogreg(benchmark::State& state) {
  const auto d = make_data(800, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fit_logreg(d.x, d.labels));
}
BENCHMARK(BM_FitLogreg)->Unit(benchmark::kMillisecond);

void BM_FitCart(benchmark::State& state) {
  const auto d = make_data(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(fit_cart(d.x, d.labels));
}
BENCHMARK(BM_FitCart)->Arg(200)->Arg(800)->Arg(3200)->Unit(benchmark::kMicrosecond);

void BM_FitAdaBoost(benchmark::State& state) {
  const auto d = make_data(800, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fit_adaboost(d.x, d.labels));
}
BENCHMARK(BM_FitAdaBoost)->Unit(benchmark::kMillisecond);

void BM_FitBoostedTrees(benchmark::State& state) {
  const auto d = make_data(800, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fit_boosted_trees(d.x, d.labels));
}
BENCHMARK(BM_FitBoostedTrees)->Unit(benchmark::kMillisecond);

void BM_FitRandomForest(benchmark::State& state) {
  const auto d = make_data(800, 6);
  RandomForestOptions o;
  o.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(fit_random_forest(d.x, d.labels, o));
}
BENCHMARK(BM_FitRandomForest)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
