// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "forestveil/protocol/tree_eval.hpp"

namespace forestveil::protocol {

// Standalone two-party privacy-preserving scoring: the provider holds the
// forest in the clear, the client generates the key pair and holds the
// input. A simplification of the on-line phase where no PRF masking is
// needed; node values come from a single plain addition per node and the
// transferred labels are masked in the message group rather than encrypted.

struct PpsStats {
    // Ciphertext-sized payloads actually exchanged, by origin.
    size_t input_ciphertexts = 0;       // client -> provider
    size_t comparison_ciphertexts = 0;  // provider -> client
    size_t transfer_payloads = 0;       // provider -> client (OT strings)

    size_t total() const { return input_ciphertexts + comparison_ciphertexts + transfer_payloads; }
};

struct PpsResult {
    int64_t sum_scaled = 0;
    uint32_t total_trees = 0;
    double y = 0.0;
    PpsStats stats;
};

// Runs the full scoring protocol in memory. The client's key pair is
// generated by the caller (the key-generation step of the protocol).
PpsResult pps_score(const forest::RandomForest& rf, const lhe::SecretKey& client_sk,
                    std::span<const forest::Milli> x, util::Rng& provider_rng,
                    util::Rng& client_rng, const ScParams& params = {});

}  // namespace forestveil::protocol
