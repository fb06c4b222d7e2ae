// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "forestveil/lhe/paillier.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::test {

// One 1024-bit key pair shared across the cases of a test binary (key
// generation is the slow part; 1024 bits is the fast test profile).
inline const lhe::KeyPair& shared_keys() {
    static lhe::KeyPair keys = [] {
        util::Rng rng;
        return lhe::keygen(1024, rng);
    }();
    return keys;
}

}  // namespace forestveil::test
