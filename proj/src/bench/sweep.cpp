// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/bench/sweep.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "forestveil/bench/stats.hpp"
#include "forestveil/forest/metrics.hpp"
#include "forestveil/forest/train.hpp"
#include "forestveil/util/parallel.hpp"

namespace forestveil::bench {

namespace {

struct SplitData {
    forest::Dataset train, test;
};

SplitData split_dataset(const forest::Dataset& data, double train_fraction, std::mt19937_64& rng) {
    std::vector<Eigen::Index> idx(size_t(data.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    size_t n_train = size_t(double(idx.size()) * train_fraction);
    if (n_train == 0 || n_train == idx.size()) throw forest::ForestError("degenerate split");
    std::vector<Eigen::Index> train_idx(idx.begin(), idx.begin() + n_train);
    std::vector<Eigen::Index> test_idx(idx.begin() + n_train, idx.end());
    return {data.subset(train_idx), data.subset(test_idx)};
}

double forest_auc(const forest::RandomForest& rf, const forest::Dataset& test) {
    std::vector<double> scores(size_t(test.rows()));
    for (Eigen::Index r = 0; r < test.rows(); ++r) scores[size_t(r)] = rf.predict(test.milli_row(r));
    return forest::auc(scores, test.labels);
}

}  // namespace

SweepResult sweep(const forest::Dataset& data, const SweepParams& params) {
    if (params.depths.empty() || params.tree_counts.empty())
        throw forest::ForestError("empty sweep grid");
    SweepResult result;
    result.budget = params.budget;

    struct Cell {
        int depth;
        uint32_t trees;
    };
    std::vector<Cell> grid;
    for (int d : params.depths)
        for (uint32_t m : params.tree_counts) grid.push_back({d, m});

    std::vector<SweepCell> cells(grid.size());
    util::parallel_for(grid.size(), [&](size_t g) {
        std::vector<double> aucs(params.replicates);
        for (uint32_t rep = 0; rep < params.replicates; ++rep) {
            std::mt19937_64 rng(params.seed + 0x1000003 * rep);
            SplitData split = split_dataset(data, params.train_fraction, rng);
            forest::TrainParams tp;
            tp.n_trees = grid[g].trees;
            tp.max_depth = grid[g].depth;
            tp.feature_fraction = params.feature_fraction;
            tp.rng_seed = params.seed ^ (uint64_t(g) << 32) ^ rep;
            forest::RandomForest rf = forest::train_forest(split.train, tp);
            aucs[rep] = forest_auc(rf, split.test);
        }
        cells[g] = {grid[g].depth, grid[g].trees, mean(aucs), stdev(aucs)};
    });
    result.cells = std::move(cells);

    const SweepCell* best = nullptr;
    const SweepCell* best_q = nullptr;
    for (const SweepCell& c : result.cells) {
        if (!best || c.mean_auc > best->mean_auc) best = &c;
        if (params.budget > 0 && c.cost() <= params.budget &&
            (!best_q || c.mean_auc > best_q->mean_auc))
            best_q = &c;
    }
    result.best = *best;
    if (best_q) result.best_constrained = *best_q;
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::ostringstream out;
    out << "depth,trees,cost,mean_auc,std_auc,in_budget\n";
    for (const SweepCell& c : result.cells)
        out << c.depth << ',' << c.trees << ',' << c.cost() << ',' << c.mean_auc << ','
            << c.std_auc << ',' << (result.budget == 0 || c.cost() <= result.budget ? 1 : 0)
            << '\n';
    return out.str();
}

}  // namespace forestveil::bench
