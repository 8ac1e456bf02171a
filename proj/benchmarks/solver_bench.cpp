#include <benchmark/benchmark.h>

#include <random>

#include "recolor/corpus.hpp"
#include "recolor/reductions.hpp"
#include "recolor/solver.hpp"
#include "recolor/verify.hpp"

using namespace recolor;

namespace {

ColoredGraph bench_graph(int n, int edge_percent, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto file = random_repair(rng, n, 3, edge_percent, Variant::fix, 2);
    return file.instance.graph;
}

void BM_conflicts(benchmark::State& state) {
    auto g = bench_graph(static_cast<int>(state.range(0)), 40, 7);
    for (auto _ : state) benchmark::DoNotOptimize(conflicts(g));
}
BENCHMARK(BM_conflicts)->Arg(64)->Arg(256);

void BM_chromatic_number(benchmark::State& state) {
    IndSetInstance src;
    src.n = static_cast<int>(state.range(0));
    src.k = 2;
    for (int v = 1; v < src.n; ++v) src.edges.emplace_back(v - 1, v);
    auto out = indset_to_3swap(src);
    for (auto _ : state)
        benchmark::DoNotOptimize(chromatic_number(out.instance.graph, out.instance.graph.n()));
}
BENCHMARK(BM_chromatic_number)->Arg(4)->Arg(8);

void BM_fix_branch(benchmark::State& state) {
    auto g = bench_graph(10, 50, 11);
    int budget = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(fix_branch(g, budget));
}
BENCHMARK(BM_fix_branch)->Arg(2)->Arg(4);

void BM_swap_optimum_separating(benchmark::State& state) {
    auto file = separating_example();
    for (auto _ : state) benchmark::DoNotOptimize(swap_optimum(file.instance.graph));
}
BENCHMARK(BM_swap_optimum_separating);

void BM_swap_search_indset_no(benchmark::State& state) {
    IndSetInstance src;
    src.n = 3;
    src.edges = {{0, 1}, {0, 2}, {1, 2}};
    src.k = 1;
    auto out = indset_to_3swap(src);
    for (auto _ : state)
        benchmark::DoNotOptimize(swap_search(out.instance.graph, out.instance.budget));
}
BENCHMARK(BM_swap_search_indset_no);

void BM_indset_generator(benchmark::State& state) {
    IndSetInstance src;
    src.n = static_cast<int>(state.range(0));
    src.k = 3;
    for (int v = 1; v < src.n; ++v) src.edges.emplace_back(v - 1, v);
    for (auto _ : state) benchmark::DoNotOptimize(indset_to_3swap(src));
}
BENCHMARK(BM_indset_generator)->Arg(8)->Arg(16);

void BM_cross_compose(benchmark::State& state) {
    std::mt19937_64 rng(5);
    auto batch = random_cnf3batch(rng, static_cast<int>(state.range(0)), 4, 3);
    for (auto _ : state) benchmark::DoNotOptimize(cross_compose(batch));
}
BENCHMARK(BM_cross_compose)->Arg(2)->Arg(8);

void BM_promise_check_augmented(benchmark::State& state) {
    IndSetInstance src;
    src.n = 4;
    src.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
    src.k = 2;
    auto aug = promise_augment(indset_to_3swap(src), src.n, src.k);
    SearchLimits limits;
    limits.chromatic_cap = aug.instance.graph.n();
    for (auto _ : state) benchmark::DoNotOptimize(promise_check(aug.instance, limits));
}
BENCHMARK(BM_promise_check_augmented);

void BM_gadget_check(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(verify_gadget_p1_p2());
}
BENCHMARK(BM_gadget_check);

} // namespace

BENCHMARK_MAIN();
