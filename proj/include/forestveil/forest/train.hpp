// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "forestveil/forest/dataset.hpp"
#include "forestveil/forest/forest.hpp"

namespace forestveil::forest {

struct TrainParams {
    uint32_t n_trees = 50;
    int max_depth = 8;
    double feature_fraction = 0.1;  // fraction of features considered per split
    uint64_t rng_seed = 0;
};

// Greedy CART with Gini impurity: bootstrap row sampling per tree, a uniform
// random feature subset per split, thresholds at midpoints of consecutive
// sorted unique values (snapped up to the fixed-point grid), stopping at the
// depth bound, pure nodes or fewer than two samples. Every tree is completed
// to max_depth. Deterministic given rng_seed.
RandomForest train_forest(const Dataset& train, const TrainParams& params);

}  // namespace forestveil::forest
