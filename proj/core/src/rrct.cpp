#include "frontier/rrct.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <utility>

namespace frontier {

namespace {

// Child stream id reserved for insertion/displacement queries.
constexpr std::uint64_t kQueryStream = 0x71e5;

struct Cut {
    int dimension;
    double value;
};

// Draws (dimension, value): dimension with probability proportional to the
// box range, value uniform in [min, max) of that dimension. One segment draw
// over the concatenated per-dimension ranges gives both at once. The box must
// have positive total range.
Cut draw_cut(const BoundingBox& box, RngStream& rng) {
    const double total = box.total_range();
    const double r = rng.uniform01() * total;
    double prefix = 0.0;
    int dim = -1;
    double offset = 0.0;
    for (std::size_t i = 0; i < box.dim(); ++i) {
        const double range = box.range(i);
        if (r < prefix + range) {
            dim = static_cast<int>(i);
            offset = r - prefix;
            break;
        }
        prefix += range;
    }
    if (dim < 0) {
        // r landed on the top edge through rounding; take the last cuttable
        // dimension.
        for (std::size_t i = box.dim(); i-- > 0;) {
            if (box.range(i) > 0.0) {
                dim = static_cast<int>(i);
                offset = box.range(i) * 0.5;
                break;
            }
        }
    }
    double value = box.min[dim] + offset;
    // Keep the cut strictly below max so the > side is never empty.
    if (!(value < box.max[dim]))
        value = std::nextafter(box.max[dim], box.min[dim]);
    return {dim, value};
}

std::unique_ptr<TreeNode> make_leaf(const std::vector<double>& coords,
                                    std::vector<std::uint64_t> ids) {
    auto leaf = std::make_unique<TreeNode>();
    leaf->box = BoundingBox(coords, coords);
    leaf->coords = coords;
    leaf->ids = std::move(ids);
    std::sort(leaf->ids.begin(), leaf->ids.end());
    leaf->count = leaf->ids.size();
    return leaf;
}

std::unique_ptr<TreeNode> clone_subtree(const TreeNode* node, TreeNode* parent) {
    if (!node) return nullptr;
    auto copy = std::make_unique<TreeNode>();
    copy->parent = parent;
    copy->box = node->box;
    copy->count = node->count;
    copy->cut_dimension = node->cut_dimension;
    copy->cut_value = node->cut_value;
    copy->coords = node->coords;
    copy->ids = node->ids;
    copy->left = clone_subtree(node->left.get(), copy.get());
    copy->right = clone_subtree(node->right.get(), copy.get());
    return copy;
}

std::uint64_t complexity_below(const TreeNode* node, std::uint64_t depth) {
    if (node->is_leaf()) return depth * node->multiplicity();
    return complexity_below(node->left.get(), depth + 1) +
           complexity_below(node->right.get(), depth + 1);
}

bool subtree_equal(const TreeNode* a, const TreeNode* b) {
    if (!a || !b) return a == b;
    if (a->is_leaf() != b->is_leaf() || a->count != b->count || a->box != b->box) return false;
    if (a->is_leaf()) return a->coords == b->coords && a->ids == b->ids;
    return a->cut_dimension == b->cut_dimension && a->cut_value == b->cut_value &&
           subtree_equal(a->left.get(), b->left.get()) &&
           subtree_equal(a->right.get(), b->right.get());
}

}  // namespace

std::uint64_t point_content_hash(const Point& p) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(p.dim()));
    for (double v : p.coords) {
        if (v == 0.0) v = 0.0;  // fold -0.0
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        h = hash_combine(h, bits);
    }
    return h;
}

RRCTree::RRCTree(std::size_t dimension, RngStream rng)
    : dimension_(dimension), rng_(rng) {
    if (dimension_ == 0) throw Error(errc::invalid_argument, "tree dimension must be positive");
}

void RRCTree::check_dimension(const Point& point) const {
    if (point.dim() != dimension_)
        throw Error(errc::dimension_mismatch,
                    "point dimension " + std::to_string(point.dim()) +
                        " does not match tree dimension " + std::to_string(dimension_));
}

RRCTree RRCTree::build(std::span<const Point> points, RngStream rng) {
    std::vector<std::uint64_t> ids(points.size());
    for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
    return build(points, ids, rng);
}

RRCTree RRCTree::build(std::span<const Point> points, std::span<const std::uint64_t> ids,
                       RngStream rng) {
    if (points.empty()) throw Error(errc::empty_input, "cannot build a tree from no points");
    if (points.size() != ids.size())
        throw Error(errc::invalid_argument, "build: one id per point required");
    const std::size_t m = points.front().dim();
    for (const Point& p : points) {
        if (p.dim() != m)
            throw Error(errc::dimension_mismatch, "mixed point dimensions in build");
        validate_point(p);
    }

    RRCTree tree(m, rng);
    struct Entry {
        const Point* point;
        std::uint64_t id;
    };
    std::vector<Entry> entries(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) entries[i] = {&points[i], ids[i]};

    // Cuts are drawn left-to-right in recursion order from the tree's stream.
    RngStream cuts = rng;
    auto recurse = [&](auto&& self, std::span<Entry> part) -> std::unique_ptr<TreeNode> {
        BoundingBox box(part.front().point->coords, part.front().point->coords);
        for (const Entry& e : part.subspan(1)) box.expand(*e.point);

        if (box.total_range() == 0.0) {
            // Single distinct point: one leaf holding every id.
            std::vector<std::uint64_t> leaf_ids;
            leaf_ids.reserve(part.size());
            for (const Entry& e : part) leaf_ids.push_back(e.id);
            return make_leaf(part.front().point->coords, std::move(leaf_ids));
        }

        const Cut cut = draw_cut(box, cuts);
        auto mid = std::partition(part.begin(), part.end(), [&](const Entry& e) {
            return (*e.point)[cut.dimension] <= cut.value;
        });
        const std::size_t left_size = static_cast<std::size_t>(mid - part.begin());

        auto node = std::make_unique<TreeNode>();
        node->box = std::move(box);
        node->count = part.size();
        node->cut_dimension = cut.dimension;
        node->cut_value = cut.value;
        node->left = self(self, part.subspan(0, left_size));
        node->right = self(self, part.subspan(left_size));
        node->left->parent = node.get();
        node->right->parent = node.get();
        return node;
    };
    tree.root_ = recurse(recurse, std::span<Entry>(entries));

    // Register ids, rejecting duplicates.
    auto index_leaves = [&](auto&& self, TreeNode* node) -> void {
        if (node->is_leaf()) {
            for (std::uint64_t id : node->ids) {
                if (!tree.leaf_of_.emplace(id, node).second)
                    throw Error(errc::duplicate_id, "duplicate point id " + std::to_string(id));
            }
            return;
        }
        self(self, node->left.get());
        self(self, node->right.get());
    };
    index_leaves(index_leaves, tree.root_.get());
    return tree;
}

RRCTree::RRCTree(const RRCTree& other)
    : dimension_(other.dimension_), rng_(other.rng_) {
    root_ = clone_subtree(other.root_.get(), nullptr);
    if (root_) {
        auto index = [&](auto&& self, TreeNode* node) -> void {
            if (node->is_leaf()) {
                for (std::uint64_t id : node->ids) leaf_of_[id] = node;
                return;
            }
            self(self, node->left.get());
            self(self, node->right.get());
        };
        index(index, root_.get());
    }
}

RRCTree& RRCTree::operator=(const RRCTree& other) {
    if (this != &other) {
        RRCTree copy(other);
        *this = std::move(copy);
    }
    return *this;
}

std::uint64_t RRCTree::distinct_leaf_count() const {
    std::uint64_t n = 0;
    auto walk = [&](auto&& self, const TreeNode* node) -> void {
        if (!node) return;
        if (node->is_leaf()) {
            ++n;
            return;
        }
        self(self, node->left.get());
        self(self, node->right.get());
    };
    walk(walk, root_.get());
    return n;
}

InsertionPlan RRCTree::plan_insertion(const Point& point) const {
    InsertionPlan plan;
    if (!root_) return plan;

    RngStream draws = rng_.fork(point_content_hash(point)).fork(kQueryStream);
    TreeNode* node = root_.get();
    std::size_t depth = 0;
    while (true) {
        BoundingBox extended = node->box;
        extended.expand(point);
        if (extended.total_range() == 0.0) {
            // The subtree is a single leaf with identical coordinates.
            plan.target = node;
            plan.target_depth = depth;
            plan.duplicate = true;
            return plan;
        }
        const Cut cut = draw_cut(extended, draws);
        if (cut.value < node->box.min[cut.dimension]) {
            plan.target = node;
            plan.target_depth = depth;
            plan.cut_dimension = cut.dimension;
            plan.cut_value = cut.value;
            plan.new_point_left = true;  // point <= cut < subtree
            return plan;
        }
        if (cut.value >= node->box.max[cut.dimension]) {
            plan.target = node;
            plan.target_depth = depth;
            plan.cut_dimension = cut.dimension;
            plan.cut_value = cut.value;
            plan.new_point_left = false;  // subtree <= cut < point
            return plan;
        }
        // Cut fell inside the existing box: descend along the stored cut.
        node = point[node->cut_dimension] <= node->cut_value ? node->left.get()
                                                             : node->right.get();
        ++depth;
    }
}

void RRCTree::insert(const Point& point, std::uint64_t point_id) {
    check_dimension(point);
    validate_point(point);
    if (leaf_of_.count(point_id))
        throw Error(errc::duplicate_id, "point id " + std::to_string(point_id) + " already present");

    if (!root_) {
        root_ = make_leaf(point.coords, {point_id});
        leaf_of_[point_id] = root_.get();
        return;
    }

    const InsertionPlan plan = plan_insertion(point);
    if (plan.duplicate) {
        TreeNode* leaf = plan.target;
        leaf->ids.insert(std::lower_bound(leaf->ids.begin(), leaf->ids.end(), point_id),
                         point_id);
        leaf->count += 1;
        for (TreeNode* n = leaf->parent; n; n = n->parent) n->count += 1;
        leaf_of_[point_id] = leaf;
        return;
    }

    TreeNode* target = plan.target;
    TreeNode* above = target->parent;
    auto& slot = !above ? root_ : (above->left.get() == target ? above->left : above->right);

    auto leaf = make_leaf(point.coords, {point_id});
    TreeNode* leaf_raw = leaf.get();

    auto branch = std::make_unique<TreeNode>();
    branch->parent = above;
    branch->box = target->box;
    branch->box.expand(point);
    branch->count = target->count + 1;
    branch->cut_dimension = plan.cut_dimension;
    branch->cut_value = plan.cut_value;

    std::unique_ptr<TreeNode> detached = std::move(slot);
    detached->parent = branch.get();
    leaf_raw->parent = branch.get();
    if (plan.new_point_left) {
        branch->left = std::move(leaf);
        branch->right = std::move(detached);
    } else {
        branch->left = std::move(detached);
        branch->right = std::move(leaf);
    }
    slot = std::move(branch);

    for (TreeNode* n = above; n; n = n->parent) {
        n->count += 1;
        n->box.expand(point);
    }
    leaf_of_[point_id] = leaf_raw;
}

void RRCTree::erase(std::uint64_t point_id) {
    auto it = leaf_of_.find(point_id);
    if (it == leaf_of_.end())
        throw Error(errc::unknown_point_id, "unknown point id " + std::to_string(point_id));
    TreeNode* leaf = it->second;
    leaf_of_.erase(it);

    if (leaf->multiplicity() > 1) {
        leaf->ids.erase(std::lower_bound(leaf->ids.begin(), leaf->ids.end(), point_id));
        leaf->count -= 1;
        for (TreeNode* n = leaf->parent; n; n = n->parent) n->count -= 1;
        return;
    }

    TreeNode* parent = leaf->parent;
    if (!parent) {
        root_.reset();
        return;
    }

    // Replace the parent branch with the sibling subtree, then restore tight
    // boxes and counts up the path.
    TreeNode* grandparent = parent->parent;
    std::unique_ptr<TreeNode>& parent_slot =
        !grandparent ? root_
                     : (grandparent->left.get() == parent ? grandparent->left : grandparent->right);
    std::unique_ptr<TreeNode> sibling =
        std::move(parent->left.get() == leaf ? parent->right : parent->left);
    sibling->parent = grandparent;
    parent_slot = std::move(sibling);

    for (TreeNode* n = grandparent; n; n = n->parent) {
        n->count -= 1;
        n->box = n->left->box;
        n->box.merge(n->right->box);
    }
}

std::uint64_t RRCTree::model_complexity() const {
    if (!root_) return 0;
    return complexity_below(root_.get(), 0);
}

std::uint64_t RRCTree::displacement(const Point& candidate) const {
    check_dimension(candidate);
    validate_point(candidate);
    if (!root_) return 0;
    const InsertionPlan plan = plan_insertion(candidate);
    if (plan.duplicate) return plan.target_depth;
    // Every leaf under the displaced subtree sinks one level; the new leaf
    // lands beside it at target_depth + 1.
    return plan.target->count + plan.target_depth + 1;
}

std::uint64_t RRCTree::tree_distance(std::uint64_t id_a, std::uint64_t id_b) const {
    auto it_a = leaf_of_.find(id_a);
    auto it_b = leaf_of_.find(id_b);
    if (it_a == leaf_of_.end())
        throw Error(errc::unknown_point_id, "unknown point id " + std::to_string(id_a));
    if (it_b == leaf_of_.end())
        throw Error(errc::unknown_point_id, "unknown point id " + std::to_string(id_b));
    const TreeNode* a = it_a->second;
    const TreeNode* b = it_b->second;
    if (a == b)
        throw Error(errc::same_point, "ids resolve to the same leaf");

    auto depth_of = [](const TreeNode* n) {
        std::size_t d = 0;
        for (; n->parent; n = n->parent) ++d;
        return d;
    };
    std::size_t da = depth_of(a);
    std::size_t db = depth_of(b);
    while (da > db) { a = a->parent; --da; }
    while (db > da) { b = b->parent; --db; }
    while (a != b) {
        a = a->parent;
        b = b->parent;
    }
    return a->count;
}

bool RRCTree::structurally_equal(const RRCTree& other) const {
    return dimension_ == other.dimension_ && subtree_equal(root_.get(), other.root_.get());
}

}  // namespace frontier
