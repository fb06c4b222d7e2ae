// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace forestveil::forest {

class ForestError : public std::runtime_error {
  public:
    explicit ForestError(const std::string& what) : std::runtime_error(what) {}
};

// Fixed-point thousandths. Features and thresholds lie in [-10^6, 10^6],
// leaf labels in [0, 1000].
using Milli = int64_t;

inline int8_t sign_of(Milli v) { return v >= 0 ? int8_t(1) : int8_t(-1); }

struct SplittingNode {
    int32_t feature = 0;  // 0-based feature index
    Milli threshold = 0;
};

// Complete binary decision tree of depth d: 2^d - 1 splitting nodes in level
// order (root first), 2^d leaves left to right. Routing takes the right
// branch when x[feature] >= threshold.
class DecisionTree {
  public:
    DecisionTree() = default;
    DecisionTree(int depth, std::vector<SplittingNode> nodes, std::vector<Milli> leaves);

    int depth() const { return depth_; }
    size_t node_count() const { return nodes_.size(); }
    size_t leaf_count() const { return leaves_.size(); }
    const std::vector<SplittingNode>& nodes() const { return nodes_; }
    const std::vector<Milli>& leaves() const { return leaves_; }

    size_t reached_leaf(std::span<const Milli> x) const;
    Milli evaluate_scaled(std::span<const Milli> x) const { return leaves_[reached_leaf(x)]; }
    double evaluate(std::span<const Milli> x) const { return double(evaluate_scaled(x)) / 1000.0; }

    int32_t max_feature() const;

  private:
    int depth_ = 0;
    std::vector<SplittingNode> nodes_;
    std::vector<Milli> leaves_;
};

// Node/leaf permutation induced by a vector of subtree swaps. gamma is
// indexed by the node positions of the *resulting* tree (level order, applied
// top-down): position maps give, for each new slot, the original slot.
struct TreeShuffle {
    std::vector<int32_t> node_map;  // new node position -> original position
    std::vector<int32_t> leaf_map;  // new leaf index -> original leaf index
};

TreeShuffle make_shuffle(int depth, std::span<const int8_t> gamma);

// A randomized tree: same nodes/leaves re-arranged, plus the orientation bits
// needed to evaluate it. At node p the right branch is taken when
// sign(x[feature] - threshold) equals orientation[p].
struct RandomizedTree {
    DecisionTree tree;
    std::vector<int8_t> orientation;  // the gamma vector, new-order indexing
    TreeShuffle shuffle;

    size_t reached_leaf(std::span<const Milli> x) const;
    Milli evaluate_scaled(std::span<const Milli> x) const {
        return tree.leaves()[reached_leaf(x)];
    }
};

RandomizedTree randomize_tree(const DecisionTree& tree, std::span<const int8_t> gamma);

// Partial binary tree used before completion (and by the trainer).
struct PartialNode {
    bool is_leaf = true;
    Milli leaf_value = 0;
    int32_t feature = 0;
    Milli threshold = 0;
    std::unique_ptr<PartialNode> left, right;

    static std::unique_ptr<PartialNode> leaf(Milli value) {
        auto n = std::make_unique<PartialNode>();
        n->leaf_value = value;
        return n;
    }
    static std::unique_ptr<PartialNode> split(int32_t feature, Milli threshold,
                                              std::unique_ptr<PartialNode> l,
                                              std::unique_ptr<PartialNode> r) {
        auto n = std::make_unique<PartialNode>();
        n->is_leaf = false;
        n->feature = feature;
        n->threshold = threshold;
        n->left = std::move(l);
        n->right = std::move(r);
        return n;
    }

    int depth() const;
    Milli evaluate_scaled(std::span<const Milli> x) const;
};

// Pads a partial tree to a complete tree of the target depth with dummy
// splitting nodes (feature 1, threshold 0 in the paper's 1-based convention)
// whose children carry identical labels.
DecisionTree complete_tree(const PartialNode& root, int target_depth);

}  // namespace forestveil::forest
