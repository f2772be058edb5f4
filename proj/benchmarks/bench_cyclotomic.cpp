#include <benchmark/benchmark.h>

#include "gbftk/cyclotomic.hpp"

using namespace gbftk;

static std::vector<unsigned> squares_mod(unsigned p)
{
    std::vector<unsigned> h;
    std::vector<bool> seen(p, false);
    for (unsigned t = 1; t < p; ++t) {
        unsigned s = static_cast<unsigned>((std::uint64_t(t) * t) % p);
        if (!seen[s]) {
            seen[s] = true;
            h.push_back(s);
        }
    }
    std::sort(h.begin(), h.end());
    return h;
}

static void BM_DeltaReport(benchmark::State& state)
{
    const unsigned p = static_cast<unsigned>(state.range(0));
    cyclo::SubfieldSpec sub(p, squares_mod(p));
    for (auto _ : state) benchmark::DoNotOptimize(cyclo::delta_report(sub));
    state.SetComplexityN(p);
}
BENCHMARK(BM_DeltaReport)->Arg(7)->Arg(23)->Arg(31);

static void BM_AbsoluteNorm(benchmark::State& state)
{
    const unsigned p = static_cast<unsigned>(state.range(0));
    auto gamma = cyc_sub(cyclo::CyclotomicInt::zeta_power(p, 1),
                         cyclo::CyclotomicInt::zeta_power(p, -1));
    for (auto _ : state) benchmark::DoNotOptimize(absolute_norm(gamma));
}
BENCHMARK(BM_AbsoluteNorm)->Arg(13)->Arg(31)->Arg(61);

static void BM_CycMul(benchmark::State& state)
{
    const unsigned m = static_cast<unsigned>(state.range(0));
    auto a = cyclo::CyclotomicInt::zeta_power(m, 1);
    for (unsigned k = 2; k < m; ++k)
        a = cyc_add(a, cyclo::CyclotomicInt::zeta_power(m, k));
    for (auto _ : state) benchmark::DoNotOptimize(cyc_mul(a, a));
}
BENCHMARK(BM_CycMul)->Arg(12)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
