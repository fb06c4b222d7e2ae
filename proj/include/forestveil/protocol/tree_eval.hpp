// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>

#include "forestveil/bench/counters.hpp"
#include "forestveil/crypto/ot.hpp"
#include "forestveil/forest/path_poly.hpp"
#include "forestveil/protocol/encrypted_model.hpp"
#include "forestveil/protocol/secure_compare.hpp"

namespace forestveil::protocol {

// Wire payloads of the tree-evaluation protocol, one instance per tree.
struct ScBatch {
    std::vector<lhe::Ciphertext> blinded;  // c'_i, randomized node order
};

struct GammaTilde {
    std::vector<int8_t> signs;  // gamma_i * alpha_i, randomized node order
};

#ifdef FORESTVEIL_ORACLE_TAPS
// Decrypt-and-assert hooks for tests. Only compiled into non-release builds.
struct TreeEvalTaps {
    // Called per original node position with the step-1 ciphertext N'_i.
    std::function<void(size_t, const lhe::Ciphertext&)> on_node_value;
    bool force_identity_gamma = false;  // gamma = +1 everywhere
    bool force_identity_alpha = false;  // alpha = +1 everywhere
};
#else
struct TreeEvalTaps {};
#endif

// User side of one tree evaluation. Methods follow the protocol steps; each
// method attributes its cryptographic operations to `counters`.
class PteUserTree {
  public:
    PteUserTree(const lhe::SecretKey& sk, const crypto::PrfSeed& seed, uint32_t tree_index,
                uint16_t depth, std::vector<forest::Milli> x,
                bench::OpCounters* counters = nullptr);

    // Step 1: b'_i = Enc(-F(s_k,(j,i))^T x) in original node order.
    std::vector<lhe::Ciphertext> input_blocks(util::Rng& rng);

    // Steps 3 and 4: decrypt the comparison batch, evaluate the path
    // polynomials against gamma-tilde and locate the unique nonzero entry.
    // Throws ProtocolAbort when no or multiple nonzero entries exist.
    size_t compute_path(const ScBatch& batch, const GammaTilde& gt);

    // Step 5: receive the masked label for the computed leaf.
    crypto::OtReceiverMsg ot_request(util::Rng& rng);
    mpz_class receive_share(const crypto::OtSenderMsg& reply);

    size_t leaf_index() const { return leaf_index_; }

  private:
    const lhe::SecretKey& sk_;
    crypto::PrfSeed seed_;
    uint32_t tree_index_;
    uint16_t depth_;
    std::vector<forest::Milli> x_;
    bench::OpCounters* counters_;
    size_t leaf_index_ = 0;
    std::optional<crypto::OtReceiver> ot_;
};

// Server side of one tree evaluation. The HomDotContext over the encrypted
// input vector is shared across all trees of a query.
class PteServerTree {
  public:
    PteServerTree(const lhe::PublicKey& pk, const EncryptedTree& tree,
                  const lhe::HomDotContext& input_ctx, bench::OpCounters* counters = nullptr,
                  const TreeEvalTaps* taps = nullptr);

    // Step 1: N'_i from the masked selectors, thresholds and input blocks.
    void node_values(std::span<const lhe::Ciphertext> input_blocks);
    // Step 2: sample gamma and re-index nodes and leaves.
    void randomize(util::Rng& rng);
    // Step 3: run the comparison protocol as party 1 on every node value.
    ScBatch comparison_round(util::Rng& rng, const ScParams& params = {});
    // Step 4 payload.
    GammaTilde gamma_tilde() const;
    // Step 5: mask the (re-indexed) leaves and answer the transfer.
    crypto::OtSenderMsg ot_respond(const crypto::OtReceiverMsg& request, util::Rng& rng);

    const mpz_class& share() const { return r_share_; }  // r^k_j

#ifdef FORESTVEIL_ORACLE_TAPS
    const forest::TreeShuffle& shuffle() const { return shuffle_; }
    std::span<const int8_t> gamma() const { return gamma_; }
    std::span<const int8_t> alphas() const { return alphas_; }
#endif

  private:
    const lhe::PublicKey& pk_;
    const EncryptedTree& tree_;
    const lhe::HomDotContext& input_ctx_;
    bench::OpCounters* counters_;
    const TreeEvalTaps* taps_;

    std::vector<lhe::Ciphertext> node_values_;  // original order, then re-indexed
    std::vector<int8_t> gamma_;
    std::vector<int8_t> alphas_;
    forest::TreeShuffle shuffle_;
    mpz_class r_share_;
    bool randomized_ = false;
};

}  // namespace forestveil::protocol
