// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/bench/merge.hpp"

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

double forest_auc(const forest::RandomForest& rf, const forest::Dataset& test) {
    std::vector<double> scores(size_t(test.rows()));
    for (Eigen::Index r = 0; r < test.rows(); ++r) scores[size_t(r)] = rf.predict(test.milli_row(r));
    return forest::auc(scores, test.labels);
}

}  // namespace

MergeResult merge_experiment(const forest::Dataset& data, const MergeParams& params) {
    uint32_t t = params.providers;
    if (t < 1) throw forest::ForestError("need at least one provider");
    if (size_t(data.rows()) < size_t(t) * 8)
        throw forest::ForestError("dataset too small for the provider count");

    MergeResult result;
    result.providers = t;
    result.merged_tree_count = t * params.trees_per_provider;
    result.silo_aucs.resize(params.replicates);
    result.merged_aucs.resize(params.replicates);
    result.pooled_aucs.resize(params.replicates);

    util::parallel_for(params.replicates, [&](size_t rep) {
        std::mt19937_64 rng(params.seed + 0x9e3779b9u * rep);
        // Split rows into t equal unique chunks, each chunk 70/30.
        std::vector<Eigen::Index> idx(size_t(data.rows()));
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        size_t chunk = idx.size() / t;

        std::vector<forest::Dataset> trains, tests;
        for (uint32_t k = 0; k < t; ++k) {
            std::vector<Eigen::Index> rows(idx.begin() + k * chunk, idx.begin() + (k + 1) * chunk);
            size_t n_train = size_t(double(rows.size()) * params.train_fraction);
            trains.push_back(
                data.subset(std::vector<Eigen::Index>(rows.begin(), rows.begin() + n_train)));
            tests.push_back(
                data.subset(std::vector<Eigen::Index>(rows.begin() + n_train, rows.end())));
        }

        // Merged test set across providers.
        forest::Dataset merged_test = tests[0];
        for (uint32_t k = 1; k < t; ++k) {
            Eigen::Index r0 = merged_test.features.rows();
            merged_test.features.conservativeResize(r0 + tests[k].features.rows(), Eigen::NoChange);
            merged_test.features.bottomRows(tests[k].features.rows()) = tests[k].features;
            merged_test.labels.insert(merged_test.labels.end(), tests[k].labels.begin(),
                                      tests[k].labels.end());
        }

        // Zero sharing: each provider on its own silo.
        std::vector<double> silo(t);
        forest::RandomForest merged;
        merged.n_features = uint32_t(data.cols());
        for (uint32_t k = 0; k < t; ++k) {
            forest::TrainParams tp;
            tp.n_trees = params.trees_per_provider;
            tp.max_depth = params.depth;
            tp.feature_fraction = params.feature_fraction;
            tp.rng_seed = params.seed + rep * 131 + k;
            forest::RandomForest rf = forest::train_forest(trains[k], tp);
            silo[k] = forest_auc(rf, tests[k]);
            for (auto& tree : rf.trees) merged.trees.push_back(std::move(tree));
        }
        result.silo_aucs[rep] = mean(silo);
        result.merged_aucs[rep] = forest_auc(merged, merged_test);

        // Merge then learn: one forest of t * trees_per_provider trees on the
        // pooled training data.
        forest::Dataset pooled_train = trains[0];
        for (uint32_t k = 1; k < t; ++k) {
            Eigen::Index r0 = pooled_train.features.rows();
            pooled_train.features.conservativeResize(r0 + trains[k].features.rows(),
                                                     Eigen::NoChange);
            pooled_train.features.bottomRows(trains[k].features.rows()) = trains[k].features;
            pooled_train.labels.insert(pooled_train.labels.end(), trains[k].labels.begin(),
                                       trains[k].labels.end());
        }
        forest::TrainParams tp;
        tp.n_trees = t * params.trees_per_provider;
        tp.max_depth = params.depth;
        tp.feature_fraction = params.feature_fraction;
        tp.rng_seed = params.seed + rep * 131 + t;
        result.pooled_aucs[rep] = forest_auc(forest::train_forest(pooled_train, tp), merged_test);
    });

    result.silo_mean = mean(result.silo_aucs);
    result.silo_ci = ci95_halfwidth(result.silo_aucs);
    result.merged_mean = mean(result.merged_aucs);
    result.merged_ci = ci95_halfwidth(result.merged_aucs);
    result.pooled_mean = mean(result.pooled_aucs);
    result.pooled_ci = ci95_halfwidth(result.pooled_aucs);
    return result;
}

std::string merge_csv(std::span<const MergeResult> results) {
    std::ostringstream out;
    out << "providers,merged_trees,silo_auc,silo_ci95,merged_auc,merged_ci95,pooled_auc,"
           "pooled_ci95\n";
    for (const MergeResult& r : results)
        out << r.providers << ',' << r.merged_tree_count << ',' << r.silo_mean << ',' << r.silo_ci
            << ',' << r.merged_mean << ',' << r.merged_ci << ',' << r.pooled_mean << ','
            << r.pooled_ci << '\n';
    return out.str();
}

}  // namespace forestveil::bench
