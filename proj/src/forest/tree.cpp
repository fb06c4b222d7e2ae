// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/tree.hpp"

#include <algorithm>

namespace forestveil::forest {

namespace {

void check_depth(int depth) {
    if (depth < 1 || depth > 24) throw ForestError("tree depth out of range");
}

}  // namespace

DecisionTree::DecisionTree(int depth, std::vector<SplittingNode> nodes, std::vector<Milli> leaves)
    : depth_(depth), nodes_(std::move(nodes)), leaves_(std::move(leaves)) {
    check_depth(depth);
    size_t want_nodes = (size_t(1) << depth) - 1;
    size_t want_leaves = size_t(1) << depth;
    if (nodes_.size() != want_nodes) throw ForestError("node count does not match depth");
    if (leaves_.size() != want_leaves) throw ForestError("leaf count does not match depth");
    for (Milli l : leaves_)
        if (l < 0 || l > 1000) throw ForestError("leaf label outside [0, 1]");
}

size_t DecisionTree::reached_leaf(std::span<const Milli> x) const {
    size_t p = 0;
    for (int level = 0; level < depth_; ++level) {
        const SplittingNode& nd = nodes_[p];
        if (size_t(nd.feature) >= x.size()) throw ForestError("input dimension mismatch");
        bool right = sign_of(x[nd.feature] - nd.threshold) > 0;
        p = 2 * p + (right ? 2 : 1);
    }
    return p - (nodes_.size());  // heap leaf slot -> leaf index
}

int32_t DecisionTree::max_feature() const {
    int32_t mx = 0;
    for (const SplittingNode& n : nodes_) mx = std::max(mx, n.feature);
    return mx;
}

namespace {

// Places the original subtree rooted at heap slot `src` into slot `dst`,
// swapping children wherever gamma (read at destination positions) is -1.
void place(int depth, std::span<const int8_t> gamma, int level, size_t src, size_t dst,
           TreeShuffle& out) {
    size_t node_count = (size_t(1) << depth) - 1;
    out.node_map[dst] = int32_t(src);
    bool swap = gamma[dst] == -1;
    size_t src_l = 2 * src + 1, src_r = 2 * src + 2;
    size_t dst_l = 2 * dst + 1, dst_r = 2 * dst + 2;
    if (swap) std::swap(src_l, src_r);
    if (level + 1 == depth) {
        out.leaf_map[dst_l - node_count] = int32_t(src_l - node_count);
        out.leaf_map[dst_r - node_count] = int32_t(src_r - node_count);
    } else {
        place(depth, gamma, level + 1, src_l, dst_l, out);
        place(depth, gamma, level + 1, src_r, dst_r, out);
    }
}

}  // namespace

TreeShuffle make_shuffle(int depth, std::span<const int8_t> gamma) {
    check_depth(depth);
    size_t node_count = (size_t(1) << depth) - 1;
    if (gamma.size() != node_count) throw ForestError("gamma length does not match node count");
    for (int8_t g : gamma)
        if (g != 1 && g != -1) throw ForestError("gamma entries must be +1 or -1");
    TreeShuffle out;
    out.node_map.assign(node_count, 0);
    out.leaf_map.assign(node_count + 1, 0);
    place(depth, gamma, 0, 0, 0, out);
    return out;
}

RandomizedTree randomize_tree(const DecisionTree& tree, std::span<const int8_t> gamma) {
    TreeShuffle shuffle = make_shuffle(tree.depth(), gamma);
    std::vector<SplittingNode> nodes(tree.node_count());
    for (size_t p = 0; p < nodes.size(); ++p) nodes[p] = tree.nodes()[shuffle.node_map[p]];
    std::vector<Milli> leaves(tree.leaf_count());
    for (size_t i = 0; i < leaves.size(); ++i) leaves[i] = tree.leaves()[shuffle.leaf_map[i]];
    RandomizedTree out;
    out.tree = DecisionTree(tree.depth(), std::move(nodes), std::move(leaves));
    out.orientation.assign(gamma.begin(), gamma.end());
    out.shuffle = std::move(shuffle);
    return out;
}

size_t RandomizedTree::reached_leaf(std::span<const Milli> x) const {
    size_t p = 0;
    for (int level = 0; level < tree.depth(); ++level) {
        const SplittingNode& nd = tree.nodes()[p];
        if (size_t(nd.feature) >= x.size()) throw ForestError("input dimension mismatch");
        bool right = sign_of(x[nd.feature] - nd.threshold) == orientation[p];
        p = 2 * p + (right ? 2 : 1);
    }
    return p - tree.node_count();
}

int PartialNode::depth() const {
    if (is_leaf) return 0;
    return 1 + std::max(left->depth(), right->depth());
}

Milli PartialNode::evaluate_scaled(std::span<const Milli> x) const {
    if (is_leaf) return leaf_value;
    if (size_t(feature) >= x.size()) throw ForestError("input dimension mismatch");
    bool goes_right = sign_of(x[feature] - threshold) > 0;
    return (goes_right ? *right : *left).evaluate_scaled(x);
}

namespace {

void fill_complete(const PartialNode& node, int target_depth, int level, size_t slot,
                   std::vector<SplittingNode>& nodes, std::vector<Milli>& leaves) {
    size_t node_count = (size_t(1) << target_depth) - 1;
    if (level == target_depth) {
        if (!node.is_leaf) throw ForestError("partial tree deeper than target depth");
        leaves[slot - node_count] = node.leaf_value;
        return;
    }
    if (node.is_leaf) {
        // Dummy split: routing is irrelevant because both subtrees agree.
        nodes[slot] = SplittingNode{0, 0};
        fill_complete(node, target_depth, level + 1, 2 * slot + 1, nodes, leaves);
        fill_complete(node, target_depth, level + 1, 2 * slot + 2, nodes, leaves);
        return;
    }
    nodes[slot] = SplittingNode{node.feature, node.threshold};
    fill_complete(*node.left, target_depth, level + 1, 2 * slot + 1, nodes, leaves);
    fill_complete(*node.right, target_depth, level + 1, 2 * slot + 2, nodes, leaves);
}

}  // namespace

DecisionTree complete_tree(const PartialNode& root, int target_depth) {
    check_depth(target_depth);
    if (root.depth() > target_depth) throw ForestError("partial tree deeper than target depth");
    std::vector<SplittingNode> nodes((size_t(1) << target_depth) - 1);
    std::vector<Milli> leaves(size_t(1) << target_depth);
    fill_complete(root, target_depth, 0, 0, nodes, leaves);
    return DecisionTree(target_depth, std::move(nodes), std::move(leaves));
}

}  // namespace forestveil::forest
