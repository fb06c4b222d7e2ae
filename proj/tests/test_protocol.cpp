// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "forestveil/bench/synthetic.hpp"
#include "forestveil/lhe/encoding.hpp"
#include "forestveil/protocol/online.hpp"
#include "forestveil/protocol/pps.hpp"
#include "support.hpp"

using namespace forestveil;
using forest::Milli;
using test::shared_keys;

namespace {

// Drives one tree evaluation in memory and returns the reconstructed scaled
// label (r + s decoded).
int64_t run_pte(const protocol::EncryptedTree& tree, const crypto::PrfSeed& seed,
                const std::vector<Milli>& x, util::Rng& rng,
                const protocol::TreeEvalTaps* taps = nullptr, size_t* leaf_out = nullptr,
                mpz_class* user_share = nullptr) {
    const lhe::KeyPair& keys = shared_keys();
    std::vector<lhe::Ciphertext> enc_input;
    for (Milli v : x) enc_input.push_back(lhe::encrypt_with_sk(keys.sk, mpz_class(v), rng));
    lhe::HomDotContext ctx(keys.pk, enc_input);

    protocol::PteUserTree user(keys.sk, seed, tree.tree_index, tree.depth, x);
    protocol::PteServerTree server(keys.pk, tree, ctx, nullptr, taps);
    auto blocks = user.input_blocks(rng);
    server.node_values(blocks);
    server.randomize(rng);
    auto batch = server.comparison_round(rng);
    auto gt = server.gamma_tilde();
    size_t leaf = user.compute_path(batch, gt);
    if (leaf_out) *leaf_out = leaf;
    auto request = user.ot_request(rng);
    auto reply = server.ot_respond(request, rng);
    mpz_class s = user.receive_share(reply);
    if (user_share) *user_share = s;
    const lhe::MessageGroup& g = keys.pk.group();
    mpz_class sum = g.decode_signed((s + server.share()) % g.modulus);
    REQUIRE(sum.fits_slong_p());
    return int64_t(sum.get_si());
}

}  // namespace

TEST_CASE("model encryption has the expected shape") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(1);
    forest::RandomForest rf = bench::random_forest(1, 1, 3, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);

    REQUIRE(model.trees.size() == 1);
    const protocol::EncryptedTree& t = model.trees[0];
    CHECK(t.masked_selectors.size() == 1);  // one splitting node at depth 1
    CHECK(t.enc_neg_thresholds.size() == 1);
    CHECK(t.enc_leaves.size() == 2);
    CHECK(t.masked_selectors[0].size() == 3);
}

TEST_CASE("masked selectors unmask to unit vectors") {
    const lhe::KeyPair& keys = shared_keys();
    const mpz_class& M = keys.pk.group().modulus;
    util::Rng rng(2);
    forest::RandomForest rf = bench::random_forest(2, 3, 5, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);

    for (size_t j = 0; j < model.trees.size(); ++j) {
        const protocol::EncryptedTree& enc = model.trees[j];
        for (size_t i = 0; i < enc.masked_selectors.size(); ++i) {
            auto mask = crypto::prf_mask(seed, enc.tree_index, protocol::node_tag(i), 5, M);
            for (size_t s = 0; s < 5; ++s) {
                mpz_class diff = (enc.masked_selectors[i][s] - mask[s]) % M;
                if (sgn(diff) < 0) diff += M;
                mpz_class want = (int32_t(s) == rf.trees[j].nodes()[i].feature) ? 1 : 0;
                REQUIRE(diff == want);
            }
        }
    }
}

TEST_CASE("model encryption counts scale with the tree size") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(3);
    forest::RandomForest rf = bench::random_forest(5, 6, 4, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 2, rng);
    size_t vectors = 0, cts = 0;
    for (const auto& t : model.trees) {
        vectors += t.masked_selectors.size();
        cts += t.enc_neg_thresholds.size() + t.enc_leaves.size();
    }
    CHECK(vectors == 5 * 63);   // m (2^d - 1)
    CHECK(cts == 5 * 127);      // m (2^(d+1) - 1) thresholds + leaves
}

TEST_CASE("encrypted model serialization round trip and heap padding") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(4);
    forest::RandomForest rf = bench::random_forest(2, 2, 3, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 7, rng);

    Bytes blob = protocol::serialize_model(keys.pk, model);
    protocol::EncryptedModel back = protocol::parse_model(keys.pk, blob);
    CHECK(protocol::serialize_model(keys.pk, back) == blob);

    // serialized sections are 1-based heap arrays: 2^d rows and 2^(d+1)
    // ciphertexts per tree
    size_t elem_w = 4 + keys.pk.element_bytes();
    size_t ct_w = 4 + keys.pk.ciphertext_bytes();
    size_t header = 4 + 1 + 4 + 4 + 2 + 4;
    size_t per_tree = 4 + (size_t(1) << 2) * 3 * elem_w + (size_t(1) << 3) * ct_w;
    CHECK(blob.size() == header + 2 * per_tree);

    // the pad ciphertext carries no model information
    CHECK(lhe::decrypt(keys.sk, back.trees[0].pad_ct) == 0);
}

TEST_CASE("the multiplicative share identity behind path computation") {
    for (int a1 : {-1, 1})
        for (int a2 : {-1, 1})
            for (int b1 : {-1, 1})
                for (int b2 : {-1, 1})
                    for (int g1 : {-1, 1})
                        for (int g2 : {-1, 1}) {
                            int n1 = a1 * b1, n2 = a2 * b2;
                            int lhs = (b1 - g1 * a1) * (b2 + g2 * a2) * a1 * a2;
                            int rhs = (n1 - g1) * (n2 + g2);
                            CHECK(lhs == rhs);
                        }
}

TEST_CASE("seed transport round trip") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(5);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    auto halves = seed.halves();
    std::array<lhe::Ciphertext, 2> enc = {lhe::encrypt(keys.pk, mpz_class(halves[0]), rng),
                                          lhe::encrypt(keys.pk, mpz_class(halves[1]), rng)};
    CHECK(protocol::decrypt_seed(keys.sk, enc) == seed);
}

TEST_CASE("tree evaluation reconstructs the scaled label") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(6);
    for (int trial = 0; trial < 6; ++trial) {
        int d = 1 + int(rng.uniform(0, 3));
        size_t n = 2 + rng.uniform(0, 5);
        forest::RandomForest rf = bench::random_forest(1, d, n, rng);
        crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
        protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);
        auto x = bench::random_input(n, rng);
        int64_t got = run_pte(model.trees[0], seed, x, rng);
        REQUIRE(got == rf.trees[0].evaluate_scaled(x));
    }
}

#ifdef FORESTVEIL_ORACLE_TAPS
TEST_CASE("node values decrypt to the scaled node differences") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(7);
    size_t n = 4;
    forest::RandomForest rf = bench::random_forest(1, 3, n, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);
    auto x = bench::random_input(n, rng);

    protocol::TreeEvalTaps taps;
    size_t checked = 0;
    taps.on_node_value = [&](size_t i, const lhe::Ciphertext& ct) {
        const forest::SplittingNode& nd = rf.trees[0].nodes()[i];
        mpz_class plain = keys.pk.group().decode_signed(lhe::decrypt(keys.sk, ct));
        REQUIRE(plain == x[nd.feature] - nd.threshold);
        ++checked;
    };
    run_pte(model.trees[0], seed, x, rng, &taps);
    CHECK(checked == rf.trees[0].node_count());
}

TEST_CASE("degenerate randomization exposes the plaintext leaf index") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(8);
    size_t n = 3;
    forest::RandomForest rf = bench::random_forest(1, 3, n, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);
    auto x = bench::random_input(n, rng);

    protocol::TreeEvalTaps taps;
    taps.force_identity_gamma = true;
    taps.force_identity_alpha = true;
    size_t leaf = 0;
    int64_t got = run_pte(model.trees[0], seed, x, rng, &taps, &leaf);
    CHECK(got == rf.trees[0].evaluate_scaled(x));
    CHECK(leaf == rf.trees[0].reached_leaf(x));
}

TEST_CASE("randomized runs agree with the shuffled leaf") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(9);
    size_t n = 4;
    forest::RandomForest rf = bench::random_forest(1, 2, n, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model = protocol::encrypt_model(rf, keys.pk, seed, 1, rng);

    std::vector<lhe::Ciphertext> enc_input;
    auto x = bench::random_input(n, rng);
    for (Milli v : x) enc_input.push_back(lhe::encrypt_with_sk(keys.sk, mpz_class(v), rng));
    lhe::HomDotContext ctx(keys.pk, enc_input);

    protocol::PteUserTree user(keys.sk, seed, 1, 2, x);
    protocol::PteServerTree server(keys.pk, model.trees[0], ctx);
    server.node_values(user.input_blocks(rng));
    server.randomize(rng);
    protocol::ScBatch batch = server.comparison_round(rng);
    size_t leaf = user.compute_path(batch, server.gamma_tilde());

    // the index the user sees is the randomized position of the true leaf
    size_t true_leaf = rf.trees[0].reached_leaf(x);
    CHECK(size_t(server.shuffle().leaf_map[leaf]) == true_leaf);
}
#endif  // FORESTVEIL_ORACLE_TAPS

TEST_CASE("path computation aborts on inconsistent values") {
    auto polys = forest::path_polynomials(2);
    // a zero entry (impossible for honest sign shares) kills every product
    std::vector<int8_t> xs = {0, 0, 0};
    CHECK_THROWS_AS(forest::unique_nonzero_leaf(polys, xs), forest::ForestError);
}

TEST_CASE("online prediction averages fixed tree outputs") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(10);
    // two providers, three trees each, predictions 0.2/0.4/0.6 and 0.1/0.3/0.5
    auto fixed_tree = [](Milli v) { return forest::DecisionTree(1, {{0, 0}}, {v, v}); };
    std::vector<protocol::EncryptedModel> models;
    std::vector<std::vector<Milli>> leaf_sets = {{200, 400, 600}, {100, 300, 500}};
    for (size_t k = 0; k < 2; ++k) {
        forest::RandomForest rf;
        rf.n_features = 2;
        for (Milli v : leaf_sets[k]) rf.trees.push_back(fixed_tree(v));
        crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
        models.push_back(protocol::encrypt_model(rf, keys.pk, seed, uint32_t(k + 1), rng));
    }
    std::vector<Milli> x = {0, 0};
    util::Rng srng(100), urng(200);
    protocol::OnlineResult res = protocol::online_predict(models, keys.sk, x, srng, urng);
    CHECK(res.total_trees == 6);
    CHECK(res.sum_scaled == 2100);
    CHECK(res.y == doctest::Approx(0.35));
    CHECK(res.y_display == "0.350000");
}

TEST_CASE("online prediction of a single tree returns its leaf") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(11);
    forest::RandomForest rf = bench::random_forest(1, 2, 3, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    std::vector<protocol::EncryptedModel> models;
    models.push_back(protocol::encrypt_model(rf, keys.pk, seed, 1, rng));
    auto x = bench::random_input(3, rng);
    util::Rng srng(1), urng(2);
    protocol::OnlineResult res = protocol::online_predict(models, keys.sk, x, srng, urng);
    CHECK(res.sum_scaled == rf.trees[0].evaluate_scaled(x));
}

TEST_CASE("online prediction equals the plaintext merged forest") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(12);
    for (int trial = 0; trial < 3; ++trial) {
        size_t n = 2 + rng.uniform(0, 6);
        std::vector<protocol::EncryptedModel> models;
        int64_t m_total = 0;
        std::vector<forest::RandomForest> plains;
        uint32_t t_providers = 1 + uint32_t(rng.uniform(0, 2));
        for (uint32_t k = 0; k < t_providers; ++k) {
            forest::RandomForest rf =
                bench::random_forest(1 + uint32_t(rng.uniform(0, 2)), 1 + int(rng.uniform(0, 3)),
                                     n, rng);
            crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
            models.push_back(protocol::encrypt_model(rf, keys.pk, seed, k + 1, rng));
            m_total += int64_t(rf.trees.size());
            plains.push_back(std::move(rf));
        }
        auto x = bench::random_input(n, rng);
        util::Rng srng(30 + trial), urng(40 + trial);
        protocol::OnlineResult res = protocol::online_predict(models, keys.sk, x, srng, urng);
        int64_t oracle = 0;
        for (const auto& rf : plains) oracle += rf.predict_scaled_sum(x);
        REQUIRE(res.sum_scaled == oracle);
        REQUIRE(res.total_trees == uint32_t(m_total));
    }
}

TEST_CASE("online prediction validates its inputs") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(13);
    std::vector<protocol::EncryptedModel> none;
    std::vector<Milli> x = {0};
    util::Rng srng(1), urng(2);
    CHECK_THROWS_AS(protocol::online_predict(none, keys.sk, x, srng, urng),
                    protocol::ProtocolError);

    forest::RandomForest rf = bench::random_forest(1, 1, 3, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    std::vector<protocol::EncryptedModel> models;
    models.push_back(protocol::encrypt_model(rf, keys.pk, seed, 1, rng));
    CHECK_THROWS_AS(protocol::online_predict(models, keys.sk, x, srng, urng),
                    protocol::ProtocolError);  // dimension mismatch
}

TEST_CASE("standalone scoring follows the plaintext forest") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(14);

    SUBCASE("single depth-1 tree, input below the threshold") {
        forest::RandomForest rf;
        rf.n_features = 2;
        rf.trees.push_back(forest::DecisionTree(1, {{1, 500}}, {250, 750}));
        std::vector<Milli> x = {0, 400};  // x[1] < 0.5 routes left
        util::Rng prng(3), crng(4);
        protocol::PpsResult res = protocol::pps_score(rf, keys.sk, x, prng, crng);
        CHECK(res.sum_scaled == 250);
    }

    SUBCASE("random forests match the oracle") {
        for (int trial = 0; trial < 3; ++trial) {
            size_t n = 2 + rng.uniform(0, 4);
            forest::RandomForest rf = bench::random_forest(1 + uint32_t(rng.uniform(0, 4)),
                                                           1 + int(rng.uniform(0, 5)), n, rng);
            auto x = bench::random_input(n, rng);
            util::Rng prng(50 + trial), crng(60 + trial);
            protocol::PpsResult res = protocol::pps_score(rf, keys.sk, x, prng, crng);
            REQUIRE(res.sum_scaled == rf.predict_scaled_sum(x));
        }
    }

    SUBCASE("communication is n + 2^(d+1) payloads within two") {
        size_t n = 6;
        int d = 3;
        forest::RandomForest rf = bench::random_forest(1, d, n, rng);
        auto x = bench::random_input(n, rng);
        util::Rng prng(5), crng(6);
        protocol::PpsResult res = protocol::pps_score(rf, keys.sk, x, prng, crng);
        uint64_t expected = n + (uint64_t(1) << (d + 1));
        uint64_t measured = res.stats.total();
        CHECK(measured >= expected - 2);
        CHECK(measured <= expected + 2);
    }
}
