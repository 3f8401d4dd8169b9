#include <benchmark/benchmark.h>

#include <vector>

#include "readout/classify.hpp"
#include "readout/info.hpp"
#include "readout/rates.hpp"

namespace {

using namespace readout;

FockReadout fig6(int n) {
  return {.levels = 3, .threshold = 1, .readouts = n, .delta = 0.02, .kd_tau = 0.01, .ku_tau = 0.005,
          .ancilla = Ancilla::multilevel};
}

void BM_TransitionMatrix(benchmark::State& state) {
  const auto gen = combined_generator(static_cast<int>(state.range(0)), 0.01, 0.005);
  for (auto _ : state) benchmark::DoNotOptimize(transition_matrix(gen, 1.0));
}
BENCHMARK(BM_TransitionMatrix)->Arg(1)->Arg(3)->Arg(6)->Arg(11);

void BM_ForwardLikelihood(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto model = build_model(fig6(n));
  std::vector<Symbol> seq(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < seq.size(); ++i) seq[i] = static_cast<Symbol>(i % 4);
  for (auto _ : state) benchmark::DoNotOptimize(likelihood(model, 3, seq));
  state.SetComplexityN(n);
}
BENCHMARK(BM_ForwardLikelihood)->RangeMultiplier(2)->Range(4, 64)->Complexity(benchmark::oN);

void BM_ExactMajority(benchmark::State& state) {
  const auto model = build_model({.levels = 2, .readouts = static_cast<int>(state.range(0)), .delta = 0.02,
                                  .kd_tau = 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(exact_infidelity(model, Majority{0}, {.threads = 1}));
}
BENCHMARK(BM_ExactMajority)->DenseRange(9, 18, 3)->Unit(benchmark::kMillisecond);

void BM_ExactMleMultilevel(benchmark::State& state) {
  const auto model = build_model(fig6(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(exact_infidelity(model, MaximumLikelihood{}, {.threads = 1}));
}
BENCHMARK(BM_ExactMleMultilevel)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_FanoBound(benchmark::State& state) {
  const auto model = build_model(fig6(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(fano_infidelity_bound(model, {.threads = 1}));
}
BENCHMARK(BM_FanoBound)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const auto model = build_model({.levels = 2, .readouts = 9, .delta = 0.02, .kd_tau = 0.01});
  const auto trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(monte_carlo_infidelity(model, Majority{0}, {.trials = trials, .seed = 1, .threads = 1}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials) * 2);
}
BENCHMARK(BM_MonteCarlo)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
