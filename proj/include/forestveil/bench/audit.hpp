// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "forestveil/bench/counters.hpp"
#include "forestveil/lhe/paillier.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::bench {

// Per-step operation counters of one instrumented tree evaluation.
struct PteTranscript {
    size_t n_features = 0;
    int depth = 0;
    CounterSnapshot user_step1, server_step1;
    CounterSnapshot user_step3, server_step3;
    CounterSnapshot user_step5, server_step5;
    size_t step1_ciphertexts = 0;  // b' blocks, user -> server
    size_t step3_ciphertexts = 0;  // comparison batch, server -> user
    size_t step5_payloads = 0;     // masked labels through the transfer
};

// Runs the tree-evaluation protocol on a random tree of the given shape,
// capturing counters at the step boundaries.
PteTranscript run_instrumented_pte(const lhe::KeyPair& keys, size_t n_features, int depth,
                                   util::Rng& rng);

struct AuditRow {
    std::string name;
    uint64_t expected = 0;
    uint64_t actual = 0;
    bool pass = false;
};

// Checks every closed-form operation count of the tree-evaluation protocol
// against the transcript.
std::vector<AuditRow> audit_pte_counts(const PteTranscript& t);
bool all_pass(const std::vector<AuditRow>& rows);
std::string audit_csv(const std::vector<AuditRow>& rows);

// Communication audit of the standalone scoring protocol: ciphertext-sized
// payloads per single-tree run, expected n + 2^(d+1) within +-2.
struct PpsCommAudit {
    size_t n_features = 0;
    int depth = 0;
    uint64_t measured = 0;
    uint64_t expected = 0;
    bool pass = false;
};
PpsCommAudit audit_pps_comm(const lhe::KeyPair& keys, size_t n_features, int depth,
                            util::Rng& rng);

// Closed-form per-frame payload bytes of a full query session, for the
// transcript byte audit. providers holds (tree_count, depth) pairs.
struct QueryShape {
    size_t n_features = 0;
    std::vector<std::pair<uint32_t, uint16_t>> providers;
};
std::map<std::string, uint64_t> expected_user_sent_payload(const lhe::PublicKey& pk,
                                                           const QueryShape& shape);
std::map<std::string, uint64_t> expected_user_received_payload(const lhe::PublicKey& pk,
                                                               const QueryShape& shape);

}  // namespace forestveil::bench
