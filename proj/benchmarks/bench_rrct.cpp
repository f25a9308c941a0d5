#include <benchmark/benchmark.h>

#include <vector>

#include "frontier/rrct.hpp"

namespace {

using namespace frontier;

std::vector<Point> uniform_points(std::size_t n, std::size_t m, std::uint64_t seed) {
    RngStream rng(seed, 100);
    std::vector<Point> points(n);
    for (Point& p : points) {
        p.coords.resize(m);
        for (std::size_t i = 0; i < m; ++i) p.coords[i] = rng.uniform01();
    }
    return points;
}

void BM_tree_build(benchmark::State& state) {
    const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 3, 7);
    for (auto _ : state) {
        RRCTree tree = RRCTree::build(points, RngStream(7, 0));
        benchmark::DoNotOptimize(tree.model_complexity());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_tree_build)->Arg(256)->Arg(1024)->Arg(4096);

void BM_tree_insert(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto points = uniform_points(n + 1024, 3, 11);
    const RRCTree base = RRCTree::build(std::span(points).first(n), RngStream(11, 0));
    std::size_t next = n;
    for (auto _ : state) {
        state.PauseTiming();
        RRCTree tree = base;
        state.ResumeTiming();
        for (std::size_t i = 0; i < 64; ++i)
            tree.insert(points[n + (next + i) % 1024], n + i);
        benchmark::DoNotOptimize(tree.leaf_count());
        next += 64;
    }
    state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_tree_insert)->Arg(1024)->Arg(8192);

void BM_displacement(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto points = uniform_points(n + 256, 3, 13);
    const RRCTree tree = RRCTree::build(std::span(points).first(n), RngStream(13, 0));
    std::size_t q = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tree.displacement(points[n + q % 256]));
        ++q;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_displacement)->Arg(1024)->Arg(8192)->Arg(65536);

}  // namespace
