// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "forestveil/crypto/prf.hpp"
#include "forestveil/forest/forest.hpp"
#include "forestveil/lhe/paillier.hpp"
#include "forestveil/protocol/secure_compare.hpp"

namespace forestveil::protocol {

// One encrypted complete binary tree of depth d (the off-line phase output):
// per splitting node a masked selector vector e'_i = e_{j_i} + F(s_k,(j,i))
// and an encryption of the negated scaled threshold; per leaf an encryption
// of the scaled label.
//
// The serialized form stores both node-indexed sections as 1-based heap
// arrays, so slot 0 of each section carries padding: a PRF row with node tag
// 0 and an encryption of zero. A serialized tree therefore holds exactly
// 2^d vector rows of n group elements and 2^(d+1) ciphertexts.
struct EncryptedTree {
    uint32_t tree_index = 0;  // 1-based within the provider, the PRF tree tag
    uint16_t depth = 0;

    std::vector<std::vector<mpz_class>> masked_selectors;  // 2^d - 1 rows of n
    std::vector<mpz_class> pad_row;                        // n elements
    std::vector<lhe::Ciphertext> enc_neg_thresholds;       // 2^d - 1
    std::vector<lhe::Ciphertext> enc_leaves;               // 2^d
    lhe::Ciphertext pad_ct;

    size_t node_count() const { return (size_t(1) << depth) - 1; }
    size_t leaf_count() const { return size_t(1) << depth; }
};

struct EncryptedModel {
    uint32_t provider_id = 0;
    uint32_t n_features = 0;
    uint16_t depth = 0;  // d_k: all trees completed to this depth
    std::array<lhe::Ciphertext, 2> enc_seed;  // two encrypted 64-bit seed halves
    std::vector<EncryptedTree> trees;

    uint32_t tree_count() const { return uint32_t(trees.size()); }
};

// The model-encryption procedure of the off-line phase. All trees must
// already be complete; thresholds and leaves must lie on the fixed-point
// grid.
EncryptedModel encrypt_model(const forest::RandomForest& rf, const lhe::PublicKey& pk,
                             const crypto::PrfSeed& seed, uint32_t provider_id, util::Rng& rng);

// Tree sections only; the encrypted seed travels with the manifest.
Bytes serialize_model(const lhe::PublicKey& pk, const EncryptedModel& model);
EncryptedModel parse_model(const lhe::PublicKey& pk, const Bytes& data);

// PRF node tags are 1-based heap positions; tag 0 is the padding row.
inline uint64_t node_tag(size_t node_pos) { return uint64_t(node_pos) + 1; }

}  // namespace forestveil::protocol
