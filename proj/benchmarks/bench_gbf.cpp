#include <benchmark/benchmark.h>

#include "gbftk/gbf.hpp"

using namespace gbftk;

static void BM_IsGbf16(benchmark::State& state)
{
    gbf::GBFCandidate c{1, 6, {0, 1, 3, 0, 5, 2}};
    for (auto _ : state) benchmark::DoNotOptimize(gbf::is_gbf(c));
}
BENCHMARK(BM_IsGbf16);

static void BM_Exhaustive13(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(gbf::exhaustive_search(1, 3).tables.size());
}
BENCHMARK(BM_Exhaustive13);

static void BM_Exhaustive22(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(gbf::exhaustive_search(2, 2).tables.size());
}
BENCHMARK(BM_Exhaustive22);

static void BM_Exhaustive16(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(gbf::exhaustive_search(1, 6).examined);
}
BENCHMARK(BM_Exhaustive16)->Unit(benchmark::kMillisecond);

static void BM_Inversion(benchmark::State& state)
{
    gbf::GBFCandidate c{2, 3, {0, 1, 2, 1, 2, 0, 2, 0, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(gbf::inversion_holds(c));
}
BENCHMARK(BM_Inversion);

BENCHMARK_MAIN();
