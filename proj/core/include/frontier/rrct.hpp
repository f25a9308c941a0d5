#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "frontier/geometry.hpp"
#include "frontier/rng.hpp"

namespace frontier {

// One node of a robust random cut tree. Branches carry the cut and the tight
// bounding box of every leaf beneath them; leaves carry the coordinates plus
// the sorted ids of all points that collapsed onto those coordinates
// (multiplicity = ids.size()).
struct TreeNode {
    TreeNode* parent = nullptr;
    BoundingBox box;
    std::uint64_t count = 0;  // leaves beneath, weighted by multiplicity

    // branch-only
    std::unique_ptr<TreeNode> left;
    std::unique_ptr<TreeNode> right;
    int cut_dimension = -1;  // -1 marks a leaf
    double cut_value = 0.0;

    // leaf-only
    std::vector<double> coords;
    std::vector<std::uint64_t> ids;  // sorted ascending

    bool is_leaf() const noexcept { return cut_dimension < 0; }
    std::uint64_t multiplicity() const noexcept { return ids.size(); }
};

// Where a simulated insertion would land: either an exact-duplicate leaf or a
// new branch spliced in above `target`.
struct InsertionPlan {
    TreeNode* target = nullptr;  // null on an empty tree
    std::size_t target_depth = 0;
    bool duplicate = false;
    int cut_dimension = -1;
    double cut_value = 0.0;
    bool new_point_left = false;
};

// A single robust random cut tree over a point set.
//
// Construction recursively cuts the tight bounding box: the cut dimension is
// chosen with probability proportional to the per-dimension range, the cut
// value uniformly within that range, points with coordinate <= cut go left.
// Coincident points collapse into one leaf and recursion stops when a
// partition holds a single distinct point.
//
// Insert and delete are the streaming maintenance procedures: insertion
// re-draws a candidate cut over the box extended by the new point at each
// level and splices a new branch where the cut separates the point; deletion
// replaces the removed leaf's parent with its sibling. Both keep boxes tight
// and counts exact along the touched path.
//
// All random draws for insertion (and its non-mutating twin, displacement)
// come from a stream keyed on the tree identity and the candidate's
// coordinate bits, so query results are independent of evaluation order and
// displacement(T, x) equals the complexity delta of actually inserting x.
class RRCTree {
public:
    RRCTree(std::size_t dimension, RngStream rng);

    // Builds over points with ids 0..n-1.
    static RRCTree build(std::span<const Point> points, RngStream rng);
    // Builds with caller-assigned ids (one per point, unique).
    static RRCTree build(std::span<const Point> points, std::span<const std::uint64_t> ids,
                         RngStream rng);

    RRCTree(const RRCTree& other);
    RRCTree& operator=(const RRCTree& other);
    RRCTree(RRCTree&&) noexcept = default;
    RRCTree& operator=(RRCTree&&) noexcept = default;

    std::size_t dimension() const noexcept { return dimension_; }
    bool empty() const noexcept { return root_ == nullptr; }
    // Points in the tree, counting multiplicity.
    std::uint64_t leaf_count() const noexcept { return root_ ? root_->count : 0; }
    // Leaf nodes reachable from the root (duplicates collapsed).
    std::uint64_t distinct_leaf_count() const;
    bool contains(std::uint64_t point_id) const { return leaf_of_.count(point_id) != 0; }
    const RngStream& rng() const noexcept { return rng_; }

    void insert(const Point& point, std::uint64_t point_id);
    void erase(std::uint64_t point_id);

    // Sum over leaves of depth x multiplicity, root depth 0.
    std::uint64_t model_complexity() const;

    // Change in model complexity if `candidate` were inserted, without
    // mutating the tree. Uses the same draws insert() would use.
    std::uint64_t displacement(const Point& candidate) const;

    // Weight (multiplicity-weighted leaf count) of the least common ancestor
    // of the two leaves holding the given ids.
    std::uint64_t tree_distance(std::uint64_t id_a, std::uint64_t id_b) const;

    // Read-only structural access for audits and serialization.
    const TreeNode* root() const noexcept { return root_.get(); }

    bool structurally_equal(const RRCTree& other) const;

private:
    InsertionPlan plan_insertion(const Point& point) const;
    void check_dimension(const Point& point) const;

    std::size_t dimension_;
    RngStream rng_;  // identity keys all insertion/displacement draws
    std::unique_ptr<TreeNode> root_;
    std::unordered_map<std::uint64_t, TreeNode*> leaf_of_;
};

// Stream key for a point's coordinate content (-0.0 folded onto +0.0 so that
// ==-equal points share draws).
std::uint64_t point_content_hash(const Point& p);

}  // namespace frontier
