#include <benchmark/benchmark.h>

#include "gbftk/arith.hpp"

using namespace gbftk;

static void BM_IsPrime64(benchmark::State& state)
{
    Int p = parse_decimal("4503599627370889");
    for (auto _ : state) benchmark::DoNotOptimize(arith::is_prime(p));
}
BENCHMARK(BM_IsPrime64);

static void BM_IsPrime76(benchmark::State& state)
{
    Int p = parse_decimal("75557863725914323420409");
    for (auto _ : state) benchmark::DoNotOptimize(arith::is_prime(p));
}
BENCHMARK(BM_IsPrime76);

static void BM_Factor64(benchmark::State& state)
{
    SplitMix64 rng(42);
    for (auto _ : state) {
        Int n = from_u64(rng.next() | 2);
        benchmark::DoNotOptimize(arith::factor(n));
    }
}
BENCHMARK(BM_Factor64);

static void BM_MultOrder52(benchmark::State& state)
{
    Int p = parse_decimal("4503599627370889");
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::mult_order(Int(2), p).order);
}
BENCHMARK(BM_MultOrder52);

static void BM_MultOrder76(benchmark::State& state)
{
    Int p = parse_decimal("75557863725914323420409");
    for (auto _ : state)
        benchmark::DoNotOptimize(arith::mult_order(Int(2), p).order);
}
BENCHMARK(BM_MultOrder76);

BENCHMARK_MAIN();
