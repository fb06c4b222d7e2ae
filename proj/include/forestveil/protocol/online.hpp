// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "forestveil/protocol/tree_eval.hpp"

namespace forestveil::protocol {

struct OnlineResult {
    int64_t sum_scaled = 0;   // sum of 1000 * T(x) over all trees
    uint32_t total_trees = 0;
    double y = 0.0;
    std::string y_display;    // y rounded to six decimal places
};

// Formats sum_scaled / (1000 m) rounded half-up to six decimal places.
std::string format_prediction(int64_t sum_scaled, uint32_t total_trees);

// Recovers the per-provider PRF seed from the published encryption of its two
// 64-bit halves.
crypto::PrfSeed decrypt_seed(const lhe::SecretKey& sk,
                             const std::array<lhe::Ciphertext, 2>& enc_seed);

// The on-line phase run in memory: the user encrypts the input once, every
// tree of every provider is evaluated with the tree-evaluation protocol, the
// server aggregates its shares and the user reconstructs the prediction.
// Tree evaluations run concurrently.
OnlineResult online_predict(const std::vector<EncryptedModel>& models, const lhe::SecretKey& sk,
                            std::span<const forest::Milli> x, util::Rng& server_rng,
                            util::Rng& user_rng, bench::OpCounters* server_counters = nullptr,
                            bench::OpCounters* user_counters = nullptr);

}  // namespace forestveil::protocol
