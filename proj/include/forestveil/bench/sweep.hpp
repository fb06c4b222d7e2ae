// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forestveil/forest/dataset.hpp"

namespace forestveil::bench {

// Grid search over (depth, tree count) with repeated 70/30 splits; the
// constrained selection is restricted to the budget set
// Q_s = {(m, d) : m * 2^d <= s}.
struct SweepParams {
    std::vector<int> depths;
    std::vector<uint32_t> tree_counts;
    uint32_t replicates = 30;
    uint64_t budget = 0;  // 0 disables the constrained selection
    double train_fraction = 0.7;
    double feature_fraction = 0.1;
    uint64_t seed = 1;
};

struct SweepCell {
    int depth = 0;
    uint32_t trees = 0;
    double mean_auc = 0.0;
    double std_auc = 0.0;

    uint64_t cost() const { return uint64_t(trees) << depth; }
};

struct SweepResult {
    std::vector<SweepCell> cells;
    SweepCell best;                            // unconstrained argmax of mean AUC
    std::optional<SweepCell> best_constrained; // argmax within Q_s
    uint64_t budget = 0;
};

SweepResult sweep(const forest::Dataset& data, const SweepParams& params);
std::string sweep_csv(const SweepResult& result);

}  // namespace forestveil::bench
