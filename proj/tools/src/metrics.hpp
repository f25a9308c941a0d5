#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/geometry.hpp"

namespace frontier::cli {

struct NnStats {
    double min_nn = 0.0;
    double mean_nn = 0.0;
};

// Per-point nearest-neighbor distances, aggregated. Exhaustive O(n^2); meant
// for desk-scale logs. Empty when n < 2.
std::optional<NnStats> nearest_neighbor_stats(std::span<const Point> points);

// Fixed-grid occupancy over a box: 32 bins per dimension in 2D, 8 otherwise.
// Zero-range dimensions collapse to a single bin.
class CoverageGrid {
public:
    explicit CoverageGrid(BoundingBox box);

    void add(const Point& p);
    std::uint64_t occupied() const noexcept { return cells_.size(); }
    double total() const noexcept { return total_; }
    double fraction() const { return static_cast<double>(cells_.size()) / total_; }

private:
    BoundingBox box_;
    std::size_t bins_;
    double total_;
    std::unordered_set<std::uint64_t> cells_;
};

// Mean L2 distance from each point in ids >= first_new_id to its nearest
// point with id < first_new_id. The separation of one batch from the dataset
// that preceded it.
double mean_separation(const Dataset& dataset, std::uint64_t first_new_id);

}  // namespace frontier::cli
