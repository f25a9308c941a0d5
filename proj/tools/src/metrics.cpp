#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "frontier/error.hpp"

namespace frontier::cli {

std::optional<NnStats> nearest_neighbor_stats(std::span<const Point> points) {
    const std::size_t n = points.size();
    if (n < 2) return std::nullopt;
    NnStats stats;
    stats.min_nn = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            best = std::min(best, lp_distance(points[i], points[j], 2.0));
        }
        stats.min_nn = std::min(stats.min_nn, best);
        sum += best;
    }
    stats.mean_nn = sum / static_cast<double>(n);
    return stats;
}

CoverageGrid::CoverageGrid(BoundingBox box)
    : box_(std::move(box)), bins_(box_.dim() == 2 ? 32 : 8) {
    if (box_.dim() == 0) throw Error(errc::invalid_argument, "coverage grid needs a box");
    total_ = 1.0;
    for (std::size_t i = 0; i < box_.dim(); ++i)
        total_ *= box_.range(i) > 0.0 ? static_cast<double>(bins_) : 1.0;
}

void CoverageGrid::add(const Point& p) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < box_.dim(); ++i) {
        std::uint64_t idx = 0;
        const double range = box_.range(i);
        if (range > 0.0) {
            const double frac = (p[i] - box_.min[i]) / range;
            const double scaled = std::floor(frac * static_cast<double>(bins_));
            idx = static_cast<std::uint64_t>(std::clamp(scaled, 0.0, static_cast<double>(bins_ - 1)));
        }
        key = key * bins_ + idx;
    }
    cells_.insert(key);
}

double mean_separation(const Dataset& dataset, std::uint64_t first_new_id) {
    const std::uint64_t n = dataset.size();
    if (first_new_id == 0 || first_new_id >= n) return -1.0;
    double sum = 0.0;
    for (std::uint64_t i = first_new_id; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::uint64_t j = 0; j < first_new_id; ++j)
            best = std::min(best, lp_distance(dataset.point(i), dataset.point(j), 2.0));
        sum += best;
    }
    return sum / static_cast<double>(n - first_new_id);
}

}  // namespace frontier::cli
