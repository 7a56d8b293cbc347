// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include "lnposet/incidence.hpp"
#include "lnposet/ln.hpp"
#include "lnposet/random_poset.hpp"

namespace {

using namespace lnposet;

Exec exec_of(const benchmark::State& state) { return state.range(1) == 0 ? Exec::kSerial : Exec::kParallel; }

void BM_InversionLn(benchmark::State& state) {
  const FinitePoset p = ln::build_ln(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mobius_by_inversion(p, exec_of(state)));
}

void BM_RecursionLn(benchmark::State& state) {
  const FinitePoset p = ln::build_ln(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mobius_by_recursion(p, exec_of(state)));
}

void BM_RecursionRandom(benchmark::State& state) {
  Rng rng(42);
  const FinitePoset p = random_poset(static_cast<std::size_t>(state.range(0)), 0.1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mobius_by_recursion(p, exec_of(state)));
}

void BM_InversionRandom(benchmark::State& state) {
  Rng rng(42);
  const FinitePoset p = random_poset(static_cast<std::size_t>(state.range(0)), 0.02, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mobius_by_inversion(p, exec_of(state)));
}

}  // namespace

// Second argument: 0 serial, 1 parallel.
BENCHMARK(BM_InversionLn)->ArgsProduct({{6, 7, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecursionLn)->ArgsProduct({{6, 7, 8, 9}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RecursionRandom)->ArgsProduct({{128, 512}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InversionRandom)->ArgsProduct({{128, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
