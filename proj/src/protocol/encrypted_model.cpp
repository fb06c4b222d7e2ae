// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/protocol/encrypted_model.hpp"

#include <cstring>

#include "forestveil/lhe/encoding.hpp"
#include "forestveil/util/parallel.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::protocol {

namespace {
constexpr char kMagic[4] = {'F', 'V', 'E', 'M'};
constexpr uint8_t kVersion = 1;
}  // namespace

EncryptedModel encrypt_model(const forest::RandomForest& rf, const lhe::PublicKey& pk,
                             const crypto::PrfSeed& seed, uint32_t provider_id, util::Rng& rng) {
    if (rf.trees.empty()) throw ProtocolError("encrypt_model: empty forest");
    int depth = rf.max_depth();
    size_t n = rf.n_features;
    for (const auto& t : rf.trees)
        if (t.depth() != depth)
            throw ProtocolError("encrypt_model: trees must be completed to a common depth");

    const mpz_class& M = pk.group().modulus;
    EncryptedModel model;
    model.provider_id = provider_id;
    model.n_features = uint32_t(n);
    model.depth = uint16_t(depth);

    auto halves = seed.halves();
    model.enc_seed[0] = lhe::encrypt(pk, mpz_class(halves[0]), rng);
    model.enc_seed[1] = lhe::encrypt(pk, mpz_class(halves[1]), rng);

    model.trees.resize(rf.trees.size());
    std::vector<uint64_t> tree_seeds(rf.trees.size());
    for (auto& s : tree_seeds) s = rng.u64();

    util::parallel_for(rf.trees.size(), [&](size_t j) {
        util::Rng tree_rng(tree_seeds[j]);
        const forest::DecisionTree& tree = rf.trees[j];
        EncryptedTree enc;
        enc.tree_index = uint32_t(j) + 1;
        enc.depth = uint16_t(depth);
        enc.masked_selectors.resize(tree.node_count());
        for (size_t i = 0; i < tree.node_count(); ++i) {
            const forest::SplittingNode& nd = tree.nodes()[i];
            if (nd.feature < 0 || size_t(nd.feature) >= n)
                throw ProtocolError("encrypt_model: feature index out of range");
            std::vector<mpz_class> row = crypto::prf_mask(seed, enc.tree_index, node_tag(i), n, M);
            row[size_t(nd.feature)] = (row[size_t(nd.feature)] + 1) % M;
            enc.masked_selectors[i] = std::move(row);
        }
        enc.pad_row = crypto::prf_mask(seed, enc.tree_index, 0, n, M);
        enc.enc_neg_thresholds.reserve(tree.node_count());
        for (size_t i = 0; i < tree.node_count(); ++i)
            enc.enc_neg_thresholds.push_back(
                lhe::encrypt(pk, mpz_class(-tree.nodes()[i].threshold), tree_rng));
        enc.enc_leaves.reserve(tree.leaf_count());
        for (size_t i = 0; i < tree.leaf_count(); ++i)
            enc.enc_leaves.push_back(lhe::encrypt(pk, mpz_class(tree.leaves()[i]), tree_rng));
        enc.pad_ct = lhe::encrypt(pk, 0, tree_rng);
        model.trees[j] = std::move(enc);
    });
    return model;
}

Bytes serialize_model(const lhe::PublicKey& pk, const EncryptedModel& model) {
    util::ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kMagic), 4);
    w.u8(kVersion);
    w.u32(model.provider_id);
    w.u32(model.n_features);
    w.u16(model.depth);
    w.u32(model.tree_count());
    size_t elem_w = pk.element_bytes();
    for (const EncryptedTree& t : model.trees) {
        w.u32(t.tree_index);
        // 2^d selector rows: heap slot 0 is the padding row
        for (const mpz_class& v : t.pad_row) w.mpz_fixed(v, elem_w);
        for (const auto& row : t.masked_selectors)
            for (const mpz_class& v : row) w.mpz_fixed(v, elem_w);
        // 2^(d+1) ciphertexts: pad, thresholds (heap slots 1..2^d-1), leaves
        w.raw(lhe::serialize_ciphertext(pk, t.pad_ct));
        for (const auto& ct : t.enc_neg_thresholds) w.raw(lhe::serialize_ciphertext(pk, ct));
        for (const auto& ct : t.enc_leaves) w.raw(lhe::serialize_ciphertext(pk, ct));
    }
    return w.take();
}

EncryptedModel parse_model(const lhe::PublicKey& pk, const Bytes& data) {
    util::ByteReader r(data);
    Bytes magic = r.raw(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) throw ProtocolError("not a model file");
    if (r.u8() != kVersion) throw ProtocolError("unsupported model file version");
    EncryptedModel model;
    model.provider_id = r.u32();
    model.n_features = r.u32();
    model.depth = r.u16();
    uint32_t m = r.u32();
    if (model.depth < 1 || model.depth > 24 || model.n_features == 0)
        throw ProtocolError("corrupt model file");
    size_t n = model.n_features;
    size_t elem_w = pk.element_bytes();
    model.trees.resize(m);
    for (EncryptedTree& t : model.trees) {
        t.tree_index = r.u32();
        t.depth = model.depth;
        t.pad_row.resize(n);
        for (auto& v : t.pad_row) v = r.mpz(elem_w);
        t.masked_selectors.assign(t.node_count(), std::vector<mpz_class>(n));
        for (auto& row : t.masked_selectors)
            for (auto& v : row) v = r.mpz(elem_w);
        t.pad_ct = lhe::parse_ciphertext(pk, r);
        t.enc_neg_thresholds.resize(t.node_count());
        for (auto& ct : t.enc_neg_thresholds) ct = lhe::parse_ciphertext(pk, r);
        t.enc_leaves.resize(t.leaf_count());
        for (auto& ct : t.enc_leaves) ct = lhe::parse_ciphertext(pk, r);
    }
    r.expect_end();
    return model;
}

}  // namespace forestveil::protocol
