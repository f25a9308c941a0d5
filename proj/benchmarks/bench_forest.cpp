#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "frontier/forest.hpp"

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

void BM_forest_train(benchmark::State& state) {
    const auto points = uniform_points(static_cast<std::size_t>(state.range(0)), 2, 17);
    for (auto _ : state) {
        Forest forest = Forest::train(points, 50, std::nullopt, RngStream(17, 1));
        benchmark::DoNotOptimize(forest.mean_complexity());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}
BENCHMARK(BM_forest_train)->Arg(200)->Arg(1000);

void BM_forest_score(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto points = uniform_points(n, 2, 19);
    const Forest forest = Forest::train(points, 50, std::nullopt, RngStream(19, 1));
    for (auto _ : state) {
        auto scored = forest.score(points);
        benchmark::DoNotOptimize(scored.front().point_id);
    }
    state.SetItemsProcessed(state.iterations() * n * 50);
}
BENCHMARK(BM_forest_score)->Arg(200)->Arg(1000);

void BM_forest_streaming_insert(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const auto points = uniform_points(n + 50, 2, 23);
    const Forest base = Forest::train(std::span(points).first(n), 50, std::nullopt, RngStream(23, 1));
    std::vector<IdPoint> batch;
    for (std::size_t i = 0; i < 50; ++i) batch.push_back(IdPoint{n + i, points[n + i]});
    for (auto _ : state) {
        state.PauseTiming();
        Forest forest = base;
        state.ResumeTiming();
        forest.insert(batch);
        benchmark::DoNotOptimize(forest.mean_complexity());
    }
    state.SetItemsProcessed(state.iterations() * 50 * 50);
}
BENCHMARK(BM_forest_streaming_insert)->Arg(1000)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
