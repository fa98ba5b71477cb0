#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "domkit/cut.hpp"
#include "domkit/dom.hpp"
#include "domkit/finite.hpp"

using namespace domkit;

namespace {

Group group_for(int which) {
    switch (which) {
        case 0: return Group::rationals();
        case 1: return Group::integers();
        case 2: return Group::localized(2);
        default: return Group::lex({Group::rationals(), Group::rationals()});
    }
}

std::vector<Cut> sample_cuts(const CutEngine& e, std::size_t n) {
    std::mt19937_64 rng(1);
    std::vector<Cut> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(e.sample(rng));
    return out;
}

void BM_CutAdd(benchmark::State& state) {
    CutEngine e(group_for(static_cast<int>(state.range(0))));
    auto xs = sample_cuts(e, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.add(xs[i % 256], xs[(i * 7 + 3) % 256]));
        ++i;
    }
}
BENCHMARK(BM_CutAdd)->DenseRange(0, 3);

void BM_CutRightAdd(benchmark::State& state) {
    CutEngine e(group_for(static_cast<int>(state.range(0))));
    auto xs = sample_cuts(e, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.radd(xs[i % 256], xs[(i * 7 + 3) % 256]));
        ++i;
    }
}
BENCHMARK(BM_CutRightAdd)->DenseRange(0, 3);

void BM_OracleSum(benchmark::State& state) {
    CutEngine e(group_for(static_cast<int>(state.range(0))));
    auto xs = sample_cuts(e, 256);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(e.oracle_sum(xs[i % 256], xs[(i * 7 + 3) % 256]));
        ++i;
    }
}
BENCHMARK(BM_OracleSum)->DenseRange(0, 3);

void BM_Enumerate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(n, predom_axioms()));
}
BENCHMARK(BM_Enumerate)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_EnumerateDoms(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(enumerate(n, dom_axioms()));
}
BENCHMARK(BM_EnumerateDoms)->DenseRange(5, 7)->Unit(benchmark::kMillisecond);

void BM_CheckAxiomsFinite(benchmark::State& state) {
    auto d = make_finite(trivial_dom(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(check_axioms(*d, all_axioms()));
}
BENCHMARK(BM_CheckAxiomsFinite)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
