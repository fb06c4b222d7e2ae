// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "forestveil/lhe/paillier.hpp"

namespace forestveil::transport {

// Public per-provider facts served to users at query start: hyperparameters
// and the encrypted PRF seed blocks. The feature dimension is global.
struct ManifestEntry {
    uint32_t provider_id = 0;
    uint32_t tree_count = 0;  // m_k
    uint16_t depth = 0;       // d_k
    std::array<lhe::Ciphertext, 2> enc_seed;
};

struct Manifest {
    lhe::PublicKey pk;
    uint32_t n_features = 0;
    std::vector<ManifestEntry> providers;

    uint32_t total_trees() const {
        uint32_t m = 0;
        for (const auto& e : providers) m += e.tree_count;
        return m;
    }
    const ManifestEntry* find(uint32_t provider_id) const;
};

Bytes serialize_manifest(const Manifest& m);
Manifest parse_manifest(const Bytes& data);

}  // namespace forestveil::transport
