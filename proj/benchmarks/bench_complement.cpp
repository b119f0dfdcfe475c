#include <benchmark/benchmark.h>

#include "buchi/ambiguity.hpp"
#include "buchi/harness.hpp"
#include "buchi/lang_ops.hpp"

using namespace buchi;

namespace {

Nbw fanbw(std::int64_t n, std::uint64_t seed) {
    return generate({.n = static_cast<std::size_t>(n), .seed = seed, .family = Family::fanbw_filtered});
}

// Each iteration cycles through a fixed pool so one lucky seed does not dominate.
constexpr std::uint64_t kPool = 16;

void run_method(benchmark::State& state, Method m, Family family) {
    std::vector<Nbw> pool;
    for (std::uint64_t s = 1; s <= kPool; ++s) {
        pool.push_back(generate({.n = static_cast<std::size_t>(state.range(0)), .seed = s, .family = family}));
    }
    std::size_t i = 0, total = 0;
    for (auto _ : state) {
        ComplementStats stats;
        benchmark::DoNotOptimize(complement(pool[i++ % kPool], m, kDefaultStateLimit, &stats));
        total += stats.macrostates;
    }
    state.counters["macrostates"] =
        benchmark::Counter(static_cast<double>(total), benchmark::Counter::kAvgIterations);
}

void BM_Ncb(benchmark::State& state) { run_method(state, Method::ncb, Family::fanbw_filtered); }
void BM_KvFa(benchmark::State& state) { run_method(state, Method::kv_fa, Family::fanbw_filtered); }
void BM_Kv(benchmark::State& state) { run_method(state, Method::kv, Family::general); }

void BM_Ambiguity(benchmark::State& state) {
    const Nbw a = generate({.n = static_cast<std::size_t>(state.range(0)), .transition_density = 2.0, .seed = 3});
    for (auto _ : state) benchmark::DoNotOptimize(is_finitely_ambiguous(a));
}

void BM_ContainsNcb(benchmark::State& state) {
    const Nbw rhs = fanbw(state.range(0), 11);
    const Nbw lhs = intersect(generate({.n = 3, .seed = 12}), rhs);
    for (auto _ : state) benchmark::DoNotOptimize(contains(lhs, rhs, Method::ncb, state.range(1) != 0));
}

}  // namespace

BENCHMARK(BM_Ncb)->DenseRange(4, 12, 2);
BENCHMARK(BM_KvFa)->DenseRange(2, 6, 2);
BENCHMARK(BM_Kv)->DenseRange(1, 3, 1);
BENCHMARK(BM_Ambiguity)->RangeMultiplier(2)->Range(4, 32);
BENCHMARK(BM_ContainsNcb)->ArgsProduct({{4, 6, 8}, {0, 1}});
BENCHMARK_MAIN();
