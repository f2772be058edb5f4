#include <benchmark/benchmark.h>

#include "gbftk/relsearch.hpp"

using namespace gbftk;

namespace {

// fixed g=8 fixture with a rank-2 group, unsolvable-ish search spaces
relsearch::ClassGroupFixture sample_fixture()
{
    relsearch::ClassGroupFixture fx;
    fx.p = 89;
    fx.g = 8;
    fx.invariants = {4, 12};
    fx.vectors = {{1, 5}, {2, 7}, {0, 11}, {3, 1},
                  {3, 7}, {2, 5}, {0, 1},  {1, 11}};
    fx.pairing = {5, 6, 7, 8, 1, 2, 3, 4};
    fx.provenance = "synthetic: benchmark fixture";
    return fx;
}

}  // namespace

static void BM_RelationSolvable(benchmark::State& state)
{
    auto fx = sample_fixture();
    const Int n(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            relsearch::relation_solvable(
                fx, n, relsearch::WitnessOrder::SolvabilityOnly)
                .has_value());
}
BENCHMARK(BM_RelationSolvable)->Arg(9)->Arg(21)->Arg(33);

static void BM_BruteOracle(benchmark::State& state)
{
    auto fx = sample_fixture();
    const Int n(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(relsearch::brute_oracle(fx, n));
}
BENCHMARK(BM_BruteOracle)->Arg(9);

static void BM_MaxNp(benchmark::State& state)
{
    auto fx = sample_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(relsearch::max_np(fx, 13).value);
}
BENCHMARK(BM_MaxNp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
