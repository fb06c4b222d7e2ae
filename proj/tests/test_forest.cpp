// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "forestveil/bench/synthetic.hpp"
#include "forestveil/forest/forest.hpp"
#include "forestveil/forest/metrics.hpp"
#include "forestveil/forest/path_poly.hpp"
#include "forestveil/forest/train.hpp"

using namespace forestveil;
using forest::Milli;

namespace {

// Independent reference: route through the heap tree recursively.
Milli traverse_oracle(const forest::DecisionTree& t, std::span<const Milli> x, size_t pos = 0,
                      int level = 0) {
    if (level == t.depth()) return t.leaves()[pos - t.node_count()];
    const forest::SplittingNode& nd = t.nodes()[pos];
    bool right = x[nd.feature] >= nd.threshold;
    return traverse_oracle(t, x, 2 * pos + (right ? 2 : 1), level + 1);
}

// Depth-2 tree with distinct leaves; thresholds at zero so signs are the
// feature signs.
forest::DecisionTree example_tree() {
    std::vector<forest::SplittingNode> nodes = {{0, 0}, {1, 0}, {2, 0}};
    std::vector<Milli> leaves = {100, 200, 300, 400};
    return forest::DecisionTree(2, std::move(nodes), std::move(leaves));
}

}  // namespace

TEST_CASE("tree evaluation follows the sign convention") {
    forest::DecisionTree t = example_tree();
    // all three node signs -1: leftmost leaf
    CHECK(t.evaluate_scaled(std::vector<Milli>{-5, -5, -5}) == 100);
    // threshold equality routes right: sign(0) = +1
    CHECK(t.evaluate_scaled(std::vector<Milli>{0, 0, 0}) == 400);
    CHECK(t.evaluate_scaled(std::vector<Milli>{-1, 7, 0}) == 200);
}

TEST_CASE("tree evaluation matches a step-by-step traversal oracle") {
    util::Rng rng(1);
    for (int trial = 0; trial < 5; ++trial) {
        forest::DecisionTree t = bench::random_tree(4, 6, rng);
        for (int i = 0; i < 100; ++i) {
            auto x = bench::random_input(6, rng);
            CHECK(t.evaluate_scaled(x) == traverse_oracle(t, x));
        }
    }
}

TEST_CASE("tree shape validation") {
    std::vector<forest::SplittingNode> nodes(3);
    CHECK_THROWS_AS(forest::DecisionTree(2, nodes, std::vector<Milli>(3)), forest::ForestError);
    CHECK_THROWS_AS(forest::DecisionTree(2, std::vector<forest::SplittingNode>(2),
                                         std::vector<Milli>(4)),
                    forest::ForestError);
    CHECK_THROWS_AS(forest::DecisionTree(2, nodes, std::vector<Milli>{0, 0, 0, 1001}),
                    forest::ForestError);
}

TEST_CASE("path polynomials carry the expected index sets") {
    auto d2 = forest::path_polynomials(2);
    REQUIRE(d2.size() == 4);
    // 1-based sets {1,2},{1,2},{1,3},{1,3} from the depth-2 example
    CHECK(d2[0].node_indices == std::vector<int32_t>{0, 1});
    CHECK(d2[1].node_indices == std::vector<int32_t>{0, 1});
    CHECK(d2[2].node_indices == std::vector<int32_t>{0, 2});
    CHECK(d2[3].node_indices == std::vector<int32_t>{0, 2});
    for (const auto& p : d2) CHECK(p.node_indices.size() == 2);

    auto d1 = forest::path_polynomials(1);
    REQUIRE(d1.size() == 2);
    CHECK(d1[0].turns == std::vector<int8_t>{-1});  // (x1 - 1)
    CHECK(d1[1].turns == std::vector<int8_t>{+1});  // (x1 + 1)
}

TEST_CASE("exactly one path polynomial is nonzero for every sign vector") {
    for (int d : {1, 2, 3}) {
        auto polys = forest::path_polynomials(d);
        size_t nodes = (size_t(1) << d) - 1;
        for (uint64_t bits = 0; bits < (uint64_t(1) << nodes); ++bits) {
            std::vector<int8_t> xs(nodes);
            for (size_t i = 0; i < nodes; ++i) xs[i] = (bits >> i) & 1 ? 1 : -1;
            size_t hits = 0, leaf = 0;
            for (size_t i = 0; i < polys.size(); ++i)
                if (polys[i].evaluate(xs) != 0) {
                    ++hits;
                    leaf = i;
                }
            REQUIRE(hits == 1);
            // and the nonzero polynomial names the reached leaf
            std::vector<Milli> x(nodes);  // feature i compared against 0
            std::vector<forest::SplittingNode> ns(nodes);
            for (size_t i = 0; i < nodes; ++i) ns[i] = {int32_t(i), 0};
            std::vector<Milli> leaves(nodes + 1);
            for (size_t i = 0; i <= nodes; ++i) leaves[i] = Milli(i);
            forest::DecisionTree t(d, std::move(ns), std::move(leaves));
            for (size_t i = 0; i < nodes; ++i) x[i] = xs[i] > 0 ? 1 : -1;
            CHECK(size_t(t.evaluate_scaled(x)) == leaf);
        }
    }
}

TEST_CASE("the swap example from the depth-2 tree") {
    forest::DecisionTree t = example_tree();
    std::vector<int8_t> gamma = {-1, +1, -1};
    forest::RandomizedTree rnd = forest::randomize_tree(t, gamma);

    // the original third splitting node becomes the second
    CHECK(rnd.shuffle.node_map == std::vector<int32_t>{0, 2, 1});
    // leaves: old (3,4) keep order under the new second node, old (1,2) swap
    CHECK(rnd.shuffle.leaf_map == std::vector<int32_t>{2, 3, 1, 0});

    // randomization preserves the function
    util::Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        auto x = bench::random_input(3, rng);
        CHECK(rnd.evaluate_scaled(x) == t.evaluate_scaled(x));
    }
}

TEST_CASE("identity gamma is the identity transformation") {
    forest::DecisionTree t = example_tree();
    std::vector<int8_t> gamma = {1, 1, 1};
    forest::RandomizedTree rnd = forest::randomize_tree(t, gamma);
    CHECK(rnd.tree.nodes()[0].feature == 0);
    CHECK(rnd.shuffle.node_map == std::vector<int32_t>{0, 1, 2});
    CHECK(rnd.shuffle.leaf_map == std::vector<int32_t>{0, 1, 2, 3});
    CHECK(rnd.tree.leaves() == t.leaves());
}

TEST_CASE("randomization invariance on random trees") {
    util::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + int(rng.uniform(0, 4));
        forest::DecisionTree t = bench::random_tree(d, 5, rng);
        std::vector<int8_t> gamma(t.node_count());
        for (auto& g : gamma) g = rng.sign();
        forest::RandomizedTree rnd = forest::randomize_tree(t, gamma);
        for (int i = 0; i < 50; ++i) {
            auto x = bench::random_input(5, rng);
            REQUIRE(rnd.evaluate_scaled(x) == t.evaluate_scaled(x));
        }
    }
    CHECK_THROWS_AS(forest::randomize_tree(example_tree(), std::vector<int8_t>{1, 1}),
                    forest::ForestError);
}

namespace {

std::unique_ptr<forest::PartialNode> random_partial(util::Rng& rng, int depth_left, size_t n) {
    if (depth_left == 0 || rng.uniform(0, 2) == 0)
        return forest::PartialNode::leaf(Milli(rng.uniform(0, 1000)));
    auto l = random_partial(rng, depth_left - 1, n);
    auto r = random_partial(rng, depth_left - 1, n);
    return forest::PartialNode::split(int32_t(rng.uniform(0, n - 1)),
                                      Milli(rng.uniform(0, 2000000)) - 1000000, std::move(l),
                                      std::move(r));
}

}  // namespace

TEST_CASE("tree completion") {
    SUBCASE("a single leaf becomes a dummy split") {
        auto leaf = forest::PartialNode::leaf(700);
        forest::DecisionTree t = forest::complete_tree(*leaf, 1);
        CHECK(t.nodes()[0].feature == 0);
        CHECK(t.nodes()[0].threshold == 0);
        CHECK(t.leaves() == std::vector<Milli>{700, 700});
    }
    SUBCASE("an already complete tree is unchanged") {
        auto root = forest::PartialNode::split(
            1, 500, forest::PartialNode::leaf(100), forest::PartialNode::leaf(900));
        forest::DecisionTree t = forest::complete_tree(*root, 1);
        CHECK(t.nodes()[0].feature == 1);
        CHECK(t.nodes()[0].threshold == 500);
        CHECK(t.leaves() == std::vector<Milli>{100, 900});
    }
    SUBCASE("completion preserves the function") {
        util::Rng rng(4);
        for (int trial = 0; trial < 20; ++trial) {
            auto root = random_partial(rng, 4, 5);
            forest::DecisionTree t = forest::complete_tree(*root, 5);
            CHECK(t.depth() == 5);
            for (int i = 0; i < 50; ++i) {
                auto x = bench::random_input(5, rng);
                REQUIRE(t.evaluate_scaled(x) == root->evaluate_scaled(x));
            }
        }
    }
    SUBCASE("too-deep partial trees are rejected") {
        auto root = forest::PartialNode::split(
            0, 0,
            forest::PartialNode::split(0, 0, forest::PartialNode::leaf(0),
                                       forest::PartialNode::leaf(1)),
            forest::PartialNode::leaf(2));
        CHECK_THROWS_AS(forest::complete_tree(*root, 1), forest::ForestError);
    }
}

TEST_CASE("training on a single-class dataset") {
    forest::Dataset ds = bench::make_blobs(60, 4, 2.0, 5);
    std::fill(ds.labels.begin(), ds.labels.end(), int8_t(1));
    forest::TrainParams tp;
    tp.n_trees = 4;
    tp.max_depth = 3;
    tp.rng_seed = 5;
    forest::RandomForest rf = forest::train_forest(ds, tp);
    for (const auto& t : rf.trees)
        for (Milli l : t.leaves()) CHECK(l == 1000);
}

TEST_CASE("training separates synthetic blobs") {
    forest::Dataset ds = bench::make_blobs(400, 2, 2.5, 6);
    forest::Dataset train = ds.subset([&] {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 0; i < 280; ++i) idx.push_back(i);
        return idx;
    }());
    forest::Dataset test = ds.subset([&] {
        std::vector<Eigen::Index> idx;
        for (Eigen::Index i = 280; i < 400; ++i) idx.push_back(i);
        return idx;
    }());
    forest::TrainParams tp;
    tp.n_trees = 50;
    tp.max_depth = 4;
    tp.feature_fraction = 0.5;
    tp.rng_seed = 7;
    forest::RandomForest rf = forest::train_forest(train, tp);
    std::vector<double> scores(size_t(test.rows()));
    for (Eigen::Index r = 0; r < test.rows(); ++r) scores[size_t(r)] = rf.predict(test.milli_row(r));
    CHECK(forest::auc(scores, test.labels) >= 0.95);
}

TEST_CASE("training is deterministic under a fixed seed") {
    forest::Dataset ds = bench::make_blobs(120, 3, 1.5, 8);
    forest::TrainParams tp;
    tp.n_trees = 8;
    tp.max_depth = 4;
    tp.rng_seed = 99;
    Bytes a = forest::serialize_forest(forest::train_forest(ds, tp));
    Bytes b = forest::serialize_forest(forest::train_forest(ds, tp));
    CHECK(a == b);
}

TEST_CASE("training rejects an empty dataset") {
    forest::Dataset empty;
    empty.features.resize(0, 3);
    forest::TrainParams tp;
    CHECK_THROWS_AS(forest::train_forest(empty, tp), forest::ForestError);
}

TEST_CASE("forest prediction is the arithmetic mean") {
    forest::RandomForest rf;
    rf.n_features = 1;
    // depth-1 trees with both leaves equal, so the output is fixed
    auto fixed_tree = [](Milli value) {
        return forest::DecisionTree(1, {{0, 0}}, {value, value});
    };
    rf.trees.push_back(fixed_tree(200));
    rf.trees.push_back(fixed_tree(800));
    std::vector<Milli> x = {0};
    CHECK(rf.predict(x) == doctest::Approx(0.5));
    CHECK(rf.predict_scaled_sum(x) == 1000);
}

TEST_CASE("auc") {
    SUBCASE("perfect ranking") {
        std::vector<double> scores = {0.1, 0.2, 0.8, 0.9};
        std::vector<int8_t> labels = {0, 0, 1, 1};
        CHECK(forest::auc(scores, labels) == doctest::Approx(1.0));
    }
    SUBCASE("ties earn half credit") {
        std::vector<double> scores = {0.5, 0.5};
        std::vector<int8_t> labels = {0, 1};
        CHECK(forest::auc(scores, labels) == doctest::Approx(0.5));
    }
    SUBCASE("matches the pairwise probability oracle") {
        util::Rng rng(9);
        std::vector<double> scores(200);
        std::vector<int8_t> labels(200);
        for (size_t i = 0; i < 200; ++i) {
            scores[i] = double(rng.uniform(0, 20)) / 20.0;  // coarse grid forces ties
            labels[i] = rng.bit() ? 1 : 0;
        }
        if (std::count(labels.begin(), labels.end(), 1) == 0) labels[0] = 1;
        if (std::count(labels.begin(), labels.end(), 0) == 0) labels[1] = 0;
        double pairs = 0, wins = 0;
        for (size_t i = 0; i < 200; ++i)
            for (size_t j = 0; j < 200; ++j)
                if (labels[i] == 1 && labels[j] == 0) {
                    pairs += 1;
                    if (scores[i] > scores[j]) wins += 1;
                    else if (scores[i] == scores[j]) wins += 0.5;
                }
        CHECK(forest::auc(scores, labels) == doctest::Approx(wins / pairs));
    }
    SUBCASE("one-class input is an error") {
        std::vector<double> scores = {0.1, 0.2};
        std::vector<int8_t> labels = {1, 1};
        CHECK_THROWS_AS(forest::auc(scores, labels), forest::ForestError);
    }
}

TEST_CASE("forest file round trip") {
    util::Rng rng(10);
    forest::RandomForest rf = bench::random_forest(3, 4, 7, rng);
    Bytes data = forest::serialize_forest(rf);
    forest::RandomForest back = forest::parse_forest(data);
    CHECK(forest::serialize_forest(back) == data);
    CHECK(back.trees.size() == 3);
    auto x = bench::random_input(7, rng);
    CHECK(back.predict_scaled_sum(x) == rf.predict_scaled_sum(x));
}
