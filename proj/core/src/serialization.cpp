#include "frontier/serialization.hpp"

#include <json.hpp>

namespace frontier {

namespace {

using nlohmann::json;

json node_to_json(const TreeNode* node) {
    if (node == nullptr) return nullptr;
    json j;
    if (node->is_leaf()) {
        j["type"] = "leaf";
        j["coords"] = node->coords;
        j["ids"] = node->ids;
        j["multiplicity"] = node->multiplicity();
        return j;
    }
    j["type"] = "branch";
    j["cut_dimension"] = node->cut_dimension;
    j["cut_value"] = node->cut_value;
    j["box"] = {{"min", node->box.min}, {"max", node->box.max}};
    j["count"] = node->count;
    j["left"] = node_to_json(node->left.get());
    j["right"] = node_to_json(node->right.get());
    return j;
}

json tree_to_json(const RRCTree& tree) {
    json j;
    j["dimension"] = tree.dimension();
    j["leaf_count"] = tree.leaf_count();
    j["rng"] = {{"seed", tree.rng().seed()}, {"stream_id", tree.rng().stream_id()}};
    j["root"] = node_to_json(tree.root());
    return j;
}

}  // namespace

std::string to_canonical_json(const RRCTree& tree) { return tree_to_json(tree).dump(); }

std::string to_canonical_json(const Forest& forest) {
    json j;
    j["num_trees"] = forest.num_trees();
    j["dimension"] = forest.dimension();
    j["rng"] = {{"seed", forest.base_rng().seed()}, {"stream_id", forest.base_rng().stream_id()}};
    if (forest.subsample_size())
        j["subsample_size"] = *forest.subsample_size();
    else
        j["subsample_size"] = nullptr;
    json trees = json::array();
    for (const RRCTree& tree : forest.trees()) trees.push_back(tree_to_json(tree));
    j["trees"] = std::move(trees);
    return j.dump();
}

}  // namespace frontier
