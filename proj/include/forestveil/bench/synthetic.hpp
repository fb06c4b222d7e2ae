// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "forestveil/forest/dataset.hpp"
#include "forestveil/forest/forest.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::bench {

// Two Gaussian blobs separated along every feature; `separation` is the
// distance between the class means in units of the (unit) class spread.
forest::Dataset make_blobs(size_t n_samples, size_t n_features, double separation, uint64_t seed);

// Interaction data: the label is the XOR of the signs of the two informative
// features (no single-feature split helps), plus uniform noise features and
// a label-flip rate.
forest::Dataset make_xor(size_t n_samples, size_t n_noise_features, double label_noise,
                         uint64_t seed);

// Uniformly random complete trees/forests over the fixed-point grid, for
// protocol-level experiments that need no training signal.
forest::DecisionTree random_tree(int depth, size_t n_features, util::Rng& rng);
forest::RandomForest random_forest(uint32_t n_trees, int depth, size_t n_features,
                                   util::Rng& rng);
std::vector<forest::Milli> random_input(size_t n_features, util::Rng& rng);

}  // namespace forestveil::bench
