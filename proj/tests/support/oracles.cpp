#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

namespace frontier::test {

namespace {

struct LeafInfo {
    const TreeNode* node;
    std::size_t depth;
};

void collect_leaves(const TreeNode* node, std::size_t depth, std::vector<LeafInfo>& out) {
    if (node->is_leaf()) {
        out.push_back({node, depth});
        return;
    }
    collect_leaves(node->left.get(), depth + 1, out);
    collect_leaves(node->right.get(), depth + 1, out);
}

BoundingBox recompute_box(const TreeNode* node) {
    if (node->is_leaf()) return BoundingBox(node->coords, node->coords);
    BoundingBox box = recompute_box(node->left.get());
    box.merge(recompute_box(node->right.get()));
    return box;
}

bool audit_node(const TreeNode* node, std::size_t dimension, std::ostringstream& err) {
    if (node->is_leaf()) {
        if (node->coords.size() != dimension) {
            err << "leaf with wrong dimension";
            return false;
        }
        if (node->ids.empty()) {
            err << "leaf with no ids";
            return false;
        }
        if (!std::is_sorted(node->ids.begin(), node->ids.end()) ||
            std::adjacent_find(node->ids.begin(), node->ids.end()) != node->ids.end()) {
            err << "leaf ids not sorted/unique";
            return false;
        }
        if (node->count != node->ids.size()) {
            err << "leaf count " << node->count << " != multiplicity " << node->ids.size();
            return false;
        }
        if (node->left || node->right) {
            err << "leaf with children";
            return false;
        }
        return true;
    }

    if (!node->left || !node->right) {
        err << "branch with missing child";
        return false;
    }
    if (node->left->parent != node || node->right->parent != node) {
        err << "child with wrong parent link";
        return false;
    }
    if (node->cut_dimension < 0 || static_cast<std::size_t>(node->cut_dimension) >= dimension) {
        err << "cut dimension out of range";
        return false;
    }
    if (node->count != node->left->count + node->right->count) {
        err << "branch count " << node->count << " != " << node->left->count << " + "
            << node->right->count;
        return false;
    }

    const BoundingBox tight = recompute_box(node);
    if (!(node->box == tight)) {
        err << "stored box is not the tight box of its leaves";
        return false;
    }
    if (node->cut_value < node->box.min[node->cut_dimension] ||
        node->cut_value >= node->box.max[node->cut_dimension]) {
        err << "cut value outside [box.min, box.max)";
        return false;
    }

    std::vector<LeafInfo> left_leaves, right_leaves;
    collect_leaves(node->left.get(), 0, left_leaves);
    collect_leaves(node->right.get(), 0, right_leaves);
    for (const LeafInfo& leaf : left_leaves) {
        if (!(leaf.node->coords[node->cut_dimension] <= node->cut_value)) {
            err << "left leaf above the cut";
            return false;
        }
    }
    for (const LeafInfo& leaf : right_leaves) {
        if (!(leaf.node->coords[node->cut_dimension] > node->cut_value)) {
            err << "right leaf at or below the cut";
            return false;
        }
    }

    return audit_node(node->left.get(), dimension, err) &&
           audit_node(node->right.get(), dimension, err);
}

}  // namespace

AuditResult audit_tree(const RRCTree& tree) {
    AuditResult result;
    if (tree.empty()) return result;

    std::ostringstream err;
    if (tree.root()->parent != nullptr) {
        return {false, "root has a parent"};
    }
    if (!audit_node(tree.root(), tree.dimension(), err)) {
        return {false, err.str()};
    }

    std::vector<LeafInfo> leaves;
    collect_leaves(tree.root(), 0, leaves);
    std::uint64_t total = 0;
    for (const LeafInfo& leaf : leaves) {
        total += leaf.node->count;
        for (std::uint64_t id : leaf.node->ids) {
            if (!tree.contains(id)) return {false, "leaf id missing from the id index"};
        }
    }
    if (total != tree.leaf_count()) return {false, "leaf_count does not match the leaves"};
    if (leaves.size() != tree.distinct_leaf_count())
        return {false, "distinct_leaf_count does not match the leaves"};
    return result;
}

std::uint64_t bfs_complexity(const RRCTree& tree) {
    if (tree.empty()) return 0;
    std::uint64_t total = 0;
    std::deque<std::pair<const TreeNode*, std::uint64_t>> queue{{tree.root(), 0}};
    while (!queue.empty()) {
        auto [node, depth] = queue.front();
        queue.pop_front();
        if (node->is_leaf()) {
            total += depth * node->multiplicity();
            continue;
        }
        queue.emplace_back(node->left.get(), depth + 1);
        queue.emplace_back(node->right.get(), depth + 1);
    }
    return total;
}

std::size_t leaf_depth(const RRCTree& tree, std::uint64_t id) {
    const TreeNode* node = tree.root();
    std::size_t depth = 0;
    while (node && !node->is_leaf()) {
        std::vector<LeafInfo> leaves;
        collect_leaves(node->left.get(), 0, leaves);
        bool in_left = false;
        for (const LeafInfo& leaf : leaves) {
            if (std::find(leaf.node->ids.begin(), leaf.node->ids.end(), id) !=
                leaf.node->ids.end()) {
                in_left = true;
                break;
            }
        }
        node = in_left ? node->left.get() : node->right.get();
        ++depth;
    }
    return depth;
}

double ks_statistic_uniform(std::vector<double> samples, double lo, double hi) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = (samples[i] - lo) / (hi - lo);
        const double lower = static_cast<double>(i) / n;
        const double upper = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(cdf - lower), std::abs(cdf - upper)});
    }
    return d;
}

namespace {

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (double v : ra) mean_a += v;
    for (double v : rb) mean_b += v;
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = ra[i] - mean_a;
        const double db = rb[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    return cov / std::sqrt(var_a * var_b);
}

std::vector<Point> gaussian_cluster(std::size_t n, std::size_t m, double sigma, RngStream& rng) {
    std::vector<Point> points(n);
    for (Point& p : points) {
        p.coords.resize(m);
        for (std::size_t i = 0; i < m; ++i) p.coords[i] = sigma * rng.normal();
    }
    return points;
}

std::vector<Point> uniform_cube_points(std::size_t n, std::size_t m, RngStream& rng) {
    std::vector<Point> points(n);
    for (Point& p : points) {
        p.coords.resize(m);
        for (std::size_t i = 0; i < m; ++i) p.coords[i] = rng.uniform01();
    }
    return points;
}

}  // namespace frontier::test
