// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "forestveil/forest/tree.hpp"

namespace forestveil::forest {

// Rows are samples, columns features; labels are binary. All feature values
// lie on the fixed-point grid.
struct Dataset {
    Eigen::MatrixXd features;
    std::vector<int8_t> labels;  // 0 or 1

    Eigen::Index rows() const { return features.rows(); }
    Eigen::Index cols() const { return features.cols(); }

    std::vector<Milli> milli_row(Eigen::Index r) const;

    // Row subset (copies).
    Dataset subset(const std::vector<Eigen::Index>& idx) const;
};

// CSV with a header row; the last column is the label in {0,1}, the rest are
// numeric features within the fixed-point range.
Dataset load_csv(const std::string& path);

// Parses a single feature row (one CSV line of n values, with or without a
// header line).
std::vector<double> load_feature_row(const std::string& path);

std::vector<Milli> to_milli(const std::vector<double>& values);

}  // namespace forestveil::forest
