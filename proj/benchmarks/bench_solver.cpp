#include <benchmark/benchmark.h>

#include "gbsat/generators.hpp"
#include "gbsat/lbd.hpp"
#include "gbsat/solver.hpp"

#include <random>

namespace {

void BM_SolveRandom3Sat(benchmark::State& state) {
  const auto n = static_cast<uint32_t>(state.range(0));
  const bool gb = state.range(1) != 0;
  const gbsat::Formula f = gbsat::gen::random_ksat(n, static_cast<uint32_t>(n * 4.26), 3, 7);
  gbsat::SolverConfig config;
  config.glue_bump = gb;
  uint64_t conflicts = 0;
  for (auto _ : state) {
    gbsat::SolveResult r = gbsat::solve(f, config);
    conflicts += r.counters.conflicts;
    benchmark::DoNotOptimize(r.verdict);
  }
  state.counters["conflicts/iter"] =
      benchmark::Counter(static_cast<double>(conflicts), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_SolveRandom3Sat)
    ->ArgsProduct({{100, 150, 200}, {0, 1}})
    ->ArgNames({"n", "gb"})
    ->Unit(benchmark::kMillisecond);

void BM_Pigeonhole(benchmark::State& state) {
  const gbsat::Formula f = gbsat::gen::pigeonhole(static_cast<uint32_t>(state.range(0)));
  gbsat::SolverConfig config;
  config.glue_bump = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(gbsat::solve(f, config).verdict);
}
BENCHMARK(BM_Pigeonhole)->ArgsProduct({{6, 7}, {0, 1}})->ArgNames({"holes", "gb"})
    ->Unit(benchmark::kMillisecond);

void BM_ComputeLbd(benchmark::State& state) {
  std::mt19937 rng(3);
  std::vector<gbsat::Lit> clause;
  std::vector<uint32_t> levels(1000);
  for (auto& l : levels) l = rng() % 64;
  for (int i = 0; i < state.range(0); ++i)
    clause.emplace_back(gbsat::Var(static_cast<uint32_t>(rng() % 1000)), true);
  for (auto _ : state) {
    auto lbd = gbsat::compute_lbd(clause, [&](gbsat::Var v) -> std::optional<uint32_t> {
      return levels[v.index];
    });
    benchmark::DoNotOptimize(lbd);
  }
}
BENCHMARK(BM_ComputeLbd)->Arg(8)->Arg(64);

} // namespace

BENCHMARK_MAIN();
