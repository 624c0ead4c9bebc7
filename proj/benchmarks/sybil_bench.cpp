#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sybil/lambert_w.hpp"
#include "sybil/optimizer.hpp"
#include "sybil/report.hpp"

namespace {

using namespace sybil;

void BM_OptimalSplit(benchmark::State& state) {
  const auto rule = VotingRule::quadratic();
  const CostScheme costs(0, 1, 0, 0);
  const double budget = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_split(rule, costs, budget));
}
BENCHMARK(BM_OptimalSplit)->RangeMultiplier(100)->Range(100, 100'000'000);

void BM_OptimalSplitBinding(benchmark::State& state) {
  const auto rule = VotingRule::logarithmic();
  const CostScheme costs(10, 0.5, 2, 0.5);
  const double budget = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(optimal_split(rule, costs, budget));
}
BENCHMARK(BM_OptimalSplitBinding)->RangeMultiplier(100)->Range(100, 100'000'000);

void BM_MinBudgetForPower(benchmark::State& state) {
  const auto rule = VotingRule::quadratic();
  const CostScheme costs(0, 0.36, 0, 0);
  const double target = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(min_budget_for_power(rule, costs, target));
}
BENCHMARK(BM_MinBudgetForPower)->RangeMultiplier(100)->Range(10, 1'000'000);

void BM_LambertW0(benchmark::State& state) {
  std::vector<double> inputs;
  for (int k = 0; k < 256; ++k) inputs.push_back(-0.36 + std::expm1(k * 0.055));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(inputs[i]));
    i = (i + 1) % inputs.size();
  }
}
BENCHMARK(BM_LambertW0);

void BM_AdaptiveCurve(benchmark::State& state) {
  const auto rule = VotingRule::quadratic();
  const CostScheme costs(0, 1, 0, 0);
  for (auto _ : state) {
    const auto grid = adaptive_budget_grid(rule, costs, 1, 1e6);
    benchmark::DoNotOptimize(per_dollar_curve(rule, costs, 1, grid));
  }
}
BENCHMARK(BM_AdaptiveCurve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
