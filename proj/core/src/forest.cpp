#include "frontier/forest.hpp"

#include <algorithm>
#include <string>

namespace frontier {

namespace {
constexpr std::uint64_t kReservoirStream = 0x5e5e;
}

Forest Forest::train(const Dataset& dataset, std::size_t num_trees,
                     std::optional<std::size_t> subsample_size, RngStream rng) {
    return train(dataset.points(), num_trees, subsample_size, rng);
}

Forest Forest::train(std::span<const Point> points, std::size_t num_trees,
                     std::optional<std::size_t> subsample_size, RngStream rng) {
    if (points.empty()) throw Error(errc::empty_input, "cannot train a forest on no points");
    if (num_trees == 0) throw Error(errc::invalid_argument, "num_trees must be positive");
    if (subsample_size && *subsample_size == 0)
        throw Error(errc::invalid_argument, "subsample_size must be positive");

    Forest forest;
    forest.dimension_ = points.front().dim();
    forest.subsample_size_ = subsample_size;
    forest.base_rng_ = rng;
    forest.points_seen_ = points.size();
    forest.trees_.reserve(num_trees);

    const std::size_t n = points.size();
    const std::size_t take = subsample_size ? std::min(*subsample_size, n) : n;

    for (std::size_t t = 0; t < num_trees; ++t) {
        RngStream tree_rng = rng.fork(t);
        if (!subsample_size) {
            forest.trees_.push_back(RRCTree::build(points, tree_rng));
            continue;
        }
        // Uniform subsample without replacement: partial Fisher-Yates over
        // the index range, drawn from the tree's own stream.
        std::vector<std::uint64_t> indices(n);
        for (std::size_t i = 0; i < n; ++i) indices[i] = i;
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t j = i + tree_rng.uniform_index(n - i);
            std::swap(indices[i], indices[j]);
        }
        indices.resize(take);
        std::vector<Point> sample(take);
        for (std::size_t i = 0; i < take; ++i) sample[i] = points[indices[i]];
        forest.trees_.push_back(RRCTree::build(sample, indices, tree_rng));
        forest.members_.push_back(std::move(indices));
        forest.reservoir_rng_.push_back(tree_rng.fork(kReservoirStream));
    }
    return forest;
}

double Forest::score_one(const Point& candidate) const {
    if (candidate.dim() != dimension_)
        throw Error(errc::dimension_mismatch, "candidate dimension does not match forest");
    double sum = 0.0;
    for (const RRCTree& tree : trees_) sum += static_cast<double>(tree.displacement(candidate));
    return sum / static_cast<double>(trees_.size());
}

std::vector<ScoredPoint> Forest::score(std::span<const Point> candidates) const {
    std::vector<std::uint64_t> ids(candidates.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return score(candidates, ids);
}

std::vector<ScoredPoint> Forest::score(std::span<const Point> candidates,
                                       std::span<const std::uint64_t> ids) const {
    if (candidates.size() != ids.size())
        throw Error(errc::invalid_argument, "score: one id per candidate required");
    std::vector<ScoredPoint> scored(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        scored[i].point_id = ids[i];
        scored[i].score = score_one(candidates[i]);
    }
    std::sort(scored.begin(), scored.end(), [](const ScoredPoint& a, const ScoredPoint& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.point_id < b.point_id;
    });
    for (std::size_t i = 0; i < scored.size(); ++i) scored[i].rank = i;
    return scored;
}

void Forest::insert(std::span<const IdPoint> new_points) {
    for (const IdPoint& np : new_points) {
        if (np.point.dim() != dimension_)
            throw Error(errc::dimension_mismatch, "point dimension does not match forest");
    }
    for (const IdPoint& np : new_points) {
        points_seen_ += 1;
        if (!subsample_size_) {
            for (RRCTree& tree : trees_) tree.insert(np.point, np.id);
            continue;
        }
        // Reservoir replacement: keep each tree an s-point uniform sample of
        // everything seen so far.
        const std::size_t s = *subsample_size_;
        for (std::size_t t = 0; t < trees_.size(); ++t) {
            auto& members = members_[t];
            auto& res_rng = reservoir_rng_[t];
            if (members.size() < s) {
                trees_[t].insert(np.point, np.id);
                members.push_back(np.id);
                continue;
            }
            const std::uint64_t slot = res_rng.uniform_index(points_seen_);
            if (slot >= s) continue;  // rejected with probability 1 - s/seen
            trees_[t].erase(members[slot]);
            trees_[t].insert(np.point, np.id);
            members[slot] = np.id;
        }
    }
}

double Forest::mean_complexity() const {
    double sum = 0.0;
    for (const RRCTree& tree : trees_) sum += static_cast<double>(tree.model_complexity());
    return sum / static_cast<double>(trees_.size());
}

}  // namespace frontier
