// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <string>
#include <vector>

#include "forestveil/forest/dataset.hpp"

namespace forestveil::bench {

// Compares zero sharing (per-silo forests), locally-learn-then-merge and
// merge-then-learn on a dataset split across t providers.
struct MergeParams {
    uint32_t providers = 2;
    uint32_t trees_per_provider = 50;
    int depth = 8;
    uint32_t replicates = 50;
    double train_fraction = 0.7;
    double feature_fraction = 0.1;
    uint64_t seed = 1;
};

struct MergeResult {
    uint32_t providers = 0;
    uint32_t merged_tree_count = 0;  // trees_per_provider * providers
    double silo_mean = 0, silo_ci = 0;
    double merged_mean = 0, merged_ci = 0;
    double pooled_mean = 0, pooled_ci = 0;
    std::vector<double> silo_aucs, merged_aucs, pooled_aucs;  // per replicate
};

MergeResult merge_experiment(const forest::Dataset& data, const MergeParams& params);
std::string merge_csv(std::span<const MergeResult> results);

}  // namespace forestveil::bench
