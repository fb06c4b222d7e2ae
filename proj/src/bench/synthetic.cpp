// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/bench/synthetic.hpp"

#include <algorithm>
#include <random>

#include "forestveil/lhe/encoding.hpp"

namespace forestveil::bench {

namespace {

double snap(double v) {
    v = std::clamp(v, -1000.0, 1000.0);
    return lhe::from_milli(std::llround(v * 1000.0));
}

}  // namespace

forest::Dataset make_blobs(size_t n_samples, size_t n_features, double separation,
                           uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::bernoulli_distribution label(0.5);
    forest::Dataset ds;
    ds.features.resize(Eigen::Index(n_samples), Eigen::Index(n_features));
    ds.labels.resize(n_samples);
    for (size_t r = 0; r < n_samples; ++r) {
        int8_t y = label(rng) ? 1 : 0;
        double center = (y == 1 ? 0.5 : -0.5) * separation;
        ds.labels[r] = y;
        for (size_t c = 0; c < n_features; ++c)
            ds.features(Eigen::Index(r), Eigen::Index(c)) = snap(center + noise(rng));
    }
    return ds;
}

forest::Dataset make_xor(size_t n_samples, size_t n_noise_features, double label_noise,
                         uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::bernoulli_distribution flip(label_noise);
    size_t n = 2 + n_noise_features;
    forest::Dataset ds;
    ds.features.resize(Eigen::Index(n_samples), Eigen::Index(n));
    ds.labels.resize(n_samples);
    for (size_t r = 0; r < n_samples; ++r) {
        double x1 = unit(rng), x2 = unit(rng);
        int8_t y = (x1 * x2 > 0) ? 1 : 0;
        if (flip(rng)) y = int8_t(1 - y);
        ds.labels[r] = y;
        ds.features(Eigen::Index(r), 0) = snap(x1);
        ds.features(Eigen::Index(r), 1) = snap(x2);
        for (size_t c = 2; c < n; ++c) ds.features(Eigen::Index(r), Eigen::Index(c)) = snap(unit(rng));
    }
    return ds;
}

forest::DecisionTree random_tree(int depth, size_t n_features, util::Rng& rng) {
    size_t nodes = (size_t(1) << depth) - 1;
    std::vector<forest::SplittingNode> ns(nodes);
    for (auto& nd : ns) {
        nd.feature = int32_t(rng.uniform(0, n_features - 1));
        nd.threshold = forest::Milli(rng.uniform(0, 2000000)) - 1000000;
    }
    std::vector<forest::Milli> leaves(nodes + 1);
    for (auto& l : leaves) l = forest::Milli(rng.uniform(0, 1000));
    return forest::DecisionTree(depth, std::move(ns), std::move(leaves));
}

forest::RandomForest random_forest(uint32_t n_trees, int depth, size_t n_features,
                                   util::Rng& rng) {
    forest::RandomForest rf;
    rf.n_features = uint32_t(n_features);
    rf.trees.reserve(n_trees);
    for (uint32_t j = 0; j < n_trees; ++j) rf.trees.push_back(random_tree(depth, n_features, rng));
    return rf;
}

std::vector<forest::Milli> random_input(size_t n_features, util::Rng& rng) {
    std::vector<forest::Milli> x(n_features);
    for (auto& v : x) v = forest::Milli(rng.uniform(0, 2000000)) - 1000000;
    return x;
}

}  // namespace forestveil::bench
