#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frontier/dataset.hpp"
#include "frontier/rrct.hpp"

namespace frontier {

inline constexpr std::size_t kDefaultNumTrees = 50;

// A candidate with its ensemble score. Scores are mean displacement across
// trees; for points already summarized by the trees a low score means the
// point sits shallow (peripheral), so ranking ascends by score: rank 0 is the
// most peripheral. Ties break by ascending id.
struct ScoredPoint {
    std::uint64_t point_id = 0;
    double score = 0.0;
    std::uint64_t rank = 0;
};

struct IdPoint {
    std::uint64_t id = 0;
    Point point;
};

// Ensemble of robust random cut trees. With subsample_size unset every tree
// summarizes every point; when set, each tree keeps an independent uniform
// subsample without replacement (reservoir-maintained under streaming
// inserts).
class Forest {
public:
    static Forest train(std::span<const Point> points, std::size_t num_trees,
                        std::optional<std::size_t> subsample_size, RngStream rng);
    static Forest train(const Dataset& dataset, std::size_t num_trees,
                        std::optional<std::size_t> subsample_size, RngStream rng);

    std::size_t num_trees() const noexcept { return trees_.size(); }
    std::size_t dimension() const noexcept { return dimension_; }
    std::optional<std::size_t> subsample_size() const noexcept { return subsample_size_; }
    const std::vector<RRCTree>& trees() const noexcept { return trees_; }
    const RngStream& base_rng() const noexcept { return base_rng_; }

    // Mean displacement of one candidate across the ensemble.
    double score_one(const Point& candidate) const;

    // Scores every candidate and returns them ranked most-peripheral first
    // (ascending score, ties by ascending id). Ids default to list indices.
    std::vector<ScoredPoint> score(std::span<const Point> candidates) const;
    std::vector<ScoredPoint> score(std::span<const Point> candidates,
                                   std::span<const std::uint64_t> ids) const;

    // Streaming update: inserts each point into every tree (or, for
    // subsampled trees, offers it to the per-tree reservoir).
    void insert(std::span<const IdPoint> new_points);

    // Mean model complexity across trees.
    double mean_complexity() const;

private:
    Forest() = default;

    std::size_t dimension_ = 0;
    std::optional<std::size_t> subsample_size_;
    RngStream base_rng_{0, 0};
    std::vector<RRCTree> trees_;
    // Reservoir bookkeeping, used only when subsample_size_ is set.
    std::uint64_t points_seen_ = 0;
    std::vector<std::vector<std::uint64_t>> members_;
    std::vector<RngStream> reservoir_rng_;
};

}  // namespace frontier
