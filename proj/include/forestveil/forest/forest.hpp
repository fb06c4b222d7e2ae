// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "forestveil/forest/tree.hpp"
#include "forestveil/util/bytes.hpp"

namespace forestveil::forest {

// A forest of complete binary trees; the prediction is the arithmetic mean of
// the tree outputs.
struct RandomForest {
    std::vector<DecisionTree> trees;
    uint32_t n_features = 0;

    size_t size() const { return trees.size(); }
    int max_depth() const;

    // Sum of the scaled tree outputs (each in [0, 1000]); the prediction is
    // sum / (1000 * size()).
    int64_t predict_scaled_sum(std::span<const Milli> x) const;
    double predict(std::span<const Milli> x) const;
};

// Versioned binary forest file.
Bytes serialize_forest(const RandomForest& rf);
RandomForest parse_forest(const Bytes& data);

void save_forest(const RandomForest& rf, const std::string& path);
RandomForest load_forest(const std::string& path);

}  // namespace forestveil::forest
