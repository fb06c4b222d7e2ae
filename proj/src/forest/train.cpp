// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/train.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "forestveil/lhe/encoding.hpp"
#include "forestveil/util/parallel.hpp"

namespace forestveil::forest {

namespace {

struct Split {
    bool found = false;
    int32_t feature = 0;
    Milli threshold = 0;
    double impurity = 0.0;
};

Milli leaf_label(const Dataset& ds, const std::vector<Eigen::Index>& rows) {
    int64_t pos = 0;
    for (Eigen::Index r : rows) pos += ds.labels[size_t(r)];
    return Milli(std::llround(1000.0 * double(pos) / double(rows.size())));
}

double gini(int64_t pos, int64_t total) {
    if (total == 0) return 0.0;
    double p = double(pos) / double(total);
    return 2.0 * p * (1.0 - p);
}

// Best Gini split over the given feature subset. Ties break toward the
// lowest feature index, then the smallest threshold.
Split best_split(const Dataset& ds, const std::vector<Eigen::Index>& rows,
                 std::vector<int32_t>& feats) {
    std::sort(feats.begin(), feats.end());
    Split best;
    std::vector<std::pair<Milli, int8_t>> vals;
    vals.reserve(rows.size());
    for (int32_t f : feats) {
        vals.clear();
        for (Eigen::Index r : rows)
            vals.emplace_back(lhe::to_milli(ds.features(r, f)), ds.labels[size_t(r)]);
        std::sort(vals.begin(), vals.end());
        int64_t total = int64_t(vals.size());
        int64_t total_pos = 0;
        for (auto& [v, y] : vals) total_pos += y;

        int64_t left = 0, left_pos = 0;
        for (size_t i = 0; i + 1 < vals.size(); ++i) {
            left += 1;
            left_pos += vals[i].second;
            if (vals[i].first == vals[i + 1].first) continue;
            double imp = (double(left) * gini(left_pos, left) +
                          double(total - left) * gini(total_pos - left_pos, total - left)) /
                         double(total);
            if (!best.found || imp < best.impurity - 1e-12) {
                Milli lo = vals[i].first, hi = vals[i + 1].first;
                // midpoint snapped up to the grid so that lo routes left
                Milli mid = (lo + hi) / 2 + ((lo + hi) % 2 != 0 ? 1 : 0);
                if (mid <= lo) mid = lo + 1;
                best = {true, f, mid, imp};
            }
        }
    }
    return best;
}

std::unique_ptr<PartialNode> build_node(const Dataset& ds, std::vector<Eigen::Index> rows,
                                        int depth_left, double feature_fraction,
                                        std::mt19937_64& rng) {
    int64_t pos = 0;
    for (Eigen::Index r : rows) pos += ds.labels[size_t(r)];
    bool pure = (pos == 0) || (pos == int64_t(rows.size()));
    if (depth_left == 0 || rows.size() < 2 || pure) return PartialNode::leaf(leaf_label(ds, rows));

    size_t n = size_t(ds.cols());
    size_t k = std::max<size_t>(1, size_t(std::llround(feature_fraction * double(n))));
    std::vector<int32_t> all(n);
    for (size_t f = 0; f < n; ++f) all[f] = int32_t(f);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<int32_t> feats(all.begin(), all.begin() + std::min(k, n));

    Split split = best_split(ds, rows, feats);
    if (!split.found) return PartialNode::leaf(leaf_label(ds, rows));

    std::vector<Eigen::Index> left, right;
    for (Eigen::Index r : rows) {
        Milli v = lhe::to_milli(ds.features(r, split.feature));
        (v >= split.threshold ? right : left).push_back(r);
    }
    if (left.empty() || right.empty()) return PartialNode::leaf(leaf_label(ds, rows));

    auto l = build_node(ds, std::move(left), depth_left - 1, feature_fraction, rng);
    auto r = build_node(ds, std::move(right), depth_left - 1, feature_fraction, rng);
    return PartialNode::split(split.feature, split.threshold, std::move(l), std::move(r));
}

}  // namespace

RandomForest train_forest(const Dataset& train, const TrainParams& params) {
    if (train.rows() == 0) throw ForestError("empty training set");
    if (params.n_trees < 1 || params.max_depth < 1) throw ForestError("bad training parameters");

    RandomForest rf;
    rf.n_features = uint32_t(train.cols());
    rf.trees.resize(params.n_trees);

    util::parallel_for(params.n_trees, [&](size_t j) {
        // Per-tree randomness stream: deterministic regardless of scheduling.
        std::mt19937_64 rng(params.rng_seed * 0x9e3779b97f4a7c15ull + j + 1);
        std::uniform_int_distribution<Eigen::Index> pick(0, train.rows() - 1);
        std::vector<Eigen::Index> rows(size_t(train.rows()));
        for (auto& r : rows) r = pick(rng);
        auto root = build_node(train, std::move(rows), params.max_depth, params.feature_fraction,
                               rng);
        rf.trees[j] = complete_tree(*root, params.max_depth);
    });
    return rf;
}

}  // namespace forestveil::forest
