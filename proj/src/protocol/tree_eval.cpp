// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/protocol/tree_eval.hpp"

#include "forestveil/util/serial.hpp"

namespace forestveil::protocol {

PteUserTree::PteUserTree(const lhe::SecretKey& sk, const crypto::PrfSeed& seed,
                         uint32_t tree_index, uint16_t depth, std::vector<forest::Milli> x,
                         bench::OpCounters* counters)
    : sk_(sk), seed_(seed), tree_index_(tree_index), depth_(depth), x_(std::move(x)),
      counters_(counters) {
    if (depth_ < 1 || depth_ > 20) throw ProtocolError("tree depth out of range");
}

std::vector<lhe::Ciphertext> PteUserTree::input_blocks(util::Rng& rng) {
    bench::CounterScope scope(counters_);
    const lhe::PublicKey& pk = sk_.public_key();
    const mpz_class& M = pk.group().modulus;
    size_t nodes = (size_t(1) << depth_) - 1;
    std::vector<lhe::Ciphertext> out;
    out.reserve(nodes);
    for (size_t i = 0; i < nodes; ++i) {
        std::vector<mpz_class> row = crypto::prf_mask(seed_, tree_index_, node_tag(i), x_.size(), M);
        mpz_class b = 0;
        for (size_t s = 0; s < x_.size(); ++s) b += row[s] * x_[s];
        b = pk.group().encode_signed(-b);
        out.push_back(lhe::encrypt_with_sk(sk_, b, rng));
    }
    return out;
}

size_t PteUserTree::compute_path(const ScBatch& batch, const GammaTilde& gt) {
    bench::CounterScope scope(counters_);
    size_t nodes = (size_t(1) << depth_) - 1;
    if (batch.blinded.size() != nodes || gt.signs.size() != nodes)
        throw ProtocolError("comparison batch size mismatch");
    std::vector<int8_t> betas(nodes);
    for (size_t p = 0; p < nodes; ++p) betas[p] = sc_party2(sk_, batch.blinded[p]);

    auto polys = forest::path_polynomials(depth_);
    try {
        leaf_index_ = forest::unique_nonzero_leaf(polys, betas, gt.signs);
    } catch (const forest::ForestError& e) {
        throw ProtocolAbort(e.what());
    }
    return leaf_index_;
}

crypto::OtReceiverMsg PteUserTree::ot_request(util::Rng& rng) {
    bench::CounterScope scope(counters_);
    ot_.emplace(depth_, leaf_index_, rng);
    return ot_->message();
}

mpz_class PteUserTree::receive_share(const crypto::OtSenderMsg& reply) {
    bench::CounterScope scope(counters_);
    if (!ot_) throw ProtocolError("transfer not initialized");
    Bytes payload = ot_->finish(reply);
    util::ByteReader r(payload);
    lhe::Ciphertext ct = lhe::parse_ciphertext(sk_.public_key(), r);
    r.expect_end();
    return lhe::decrypt(sk_, ct);
}

PteServerTree::PteServerTree(const lhe::PublicKey& pk, const EncryptedTree& tree,
                             const lhe::HomDotContext& input_ctx, bench::OpCounters* counters,
                             const TreeEvalTaps* taps)
    : pk_(pk), tree_(tree), input_ctx_(input_ctx), counters_(counters), taps_(taps) {
    if (input_ctx_.size() != tree_.pad_row.size())
        throw ProtocolError("input dimension does not match the encrypted tree");
    (void)taps_;
}

void PteServerTree::node_values(std::span<const lhe::Ciphertext> input_blocks) {
    bench::CounterScope scope(counters_);
    size_t nodes = tree_.node_count();
    if (input_blocks.size() != nodes) throw ProtocolError("input block count mismatch");
    node_values_.clear();
    node_values_.reserve(nodes);
    for (size_t i = 0; i < nodes; ++i) {
        lhe::Ciphertext acc = input_ctx_.dot(tree_.masked_selectors[i]);
        acc = lhe::hom_add(pk_, acc, tree_.enc_neg_thresholds[i]);
        acc = lhe::hom_add(pk_, acc, input_blocks[i]);
#ifdef FORESTVEIL_ORACLE_TAPS
        if (taps_ && taps_->on_node_value) taps_->on_node_value(i, acc);
#endif
        node_values_.push_back(std::move(acc));
    }
}

void PteServerTree::randomize(util::Rng& rng) {
    bench::CounterScope scope(counters_);
    size_t nodes = tree_.node_count();
    gamma_.resize(nodes);
    for (auto& g : gamma_) g = rng.sign();
#ifdef FORESTVEIL_ORACLE_TAPS
    if (taps_ && taps_->force_identity_gamma) std::fill(gamma_.begin(), gamma_.end(), int8_t(1));
#endif
    shuffle_ = forest::make_shuffle(tree_.depth, gamma_);
    std::vector<lhe::Ciphertext> permuted(nodes);
    for (size_t p = 0; p < nodes; ++p) permuted[p] = node_values_[size_t(shuffle_.node_map[p])];
    node_values_ = std::move(permuted);
    randomized_ = true;
}

ScBatch PteServerTree::comparison_round(util::Rng& rng, const ScParams& params) {
    bench::CounterScope scope(counters_);
    if (!randomized_) throw ProtocolError("comparison before randomization");
    ScBatch batch;
    batch.blinded.reserve(node_values_.size());
    alphas_.resize(node_values_.size());
    for (size_t p = 0; p < node_values_.size(); ++p) {
        ScPart1Result res;
#ifdef FORESTVEIL_ORACLE_TAPS
        if (taps_ && taps_->force_identity_alpha) {
            uint64_t r = rng.uniform(2, params.r_upper());
            uint64_t s = rng.uniform(1, r - 1);
            res = sc_party1_with(pk_, node_values_[p], params, 1, r, s);
        } else
#endif
        {
            res = sc_party1(pk_, node_values_[p], params, rng);
        }
        alphas_[p] = res.alpha;
        batch.blinded.push_back(std::move(res.blinded));
    }
    return batch;
}

GammaTilde PteServerTree::gamma_tilde() const {
    if (alphas_.empty()) throw ProtocolError("gamma-tilde before comparison round");
    GammaTilde gt;
    gt.signs.resize(gamma_.size());
    for (size_t p = 0; p < gamma_.size(); ++p) gt.signs[p] = int8_t(gamma_[p] * alphas_[p]);
    return gt;
}

crypto::OtSenderMsg PteServerTree::ot_respond(const crypto::OtReceiverMsg& request,
                                              util::Rng& rng) {
    bench::CounterScope scope(counters_);
    if (!randomized_) throw ProtocolError("transfer before randomization");
    r_share_ = rng.below(pk_.group().modulus);
    mpz_class neg_r = -r_share_;
    std::vector<Bytes> strings;
    strings.reserve(tree_.leaf_count());
    for (size_t i = 0; i < tree_.leaf_count(); ++i) {
        const lhe::Ciphertext& leaf = tree_.enc_leaves[size_t(shuffle_.leaf_map[i])];
        strings.push_back(lhe::serialize_ciphertext(pk_, lhe::add_plain(pk_, leaf, neg_r)));
    }
    return crypto::ot_send(request, strings, rng);
}

}  // namespace forestveil::protocol
