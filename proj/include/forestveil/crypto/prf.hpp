// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <vector>

#include "forestveil/util/bytes.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::crypto {

// 128-bit PRF seed (the per-provider masking seed).
struct PrfSeed {
    std::array<uint8_t, 16> key{};

    static PrfSeed random(util::Rng& rng) {
        PrfSeed s;
        rng.fill(s.key.data(), s.key.size());
        return s;
    }

    // The seed split into two 64-bit blocks (big-endian), for encryption
    // under the LHE scheme.
    std::array<uint64_t, 2> halves() const;
    static PrfSeed from_halves(uint64_t hi, uint64_t lo);

    bool operator==(const PrfSeed& o) const { return key == o.key; }
};

// AES-128/ECB block transform; the keyed permutation behind the PRF and the
// OT keystreams.
class Aes128 {
  public:
    explicit Aes128(const std::array<uint8_t, 16>& key);
    ~Aes128();
    Aes128(const Aes128&) = delete;
    Aes128& operator=(const Aes128&) = delete;

    void encrypt_blocks(const uint8_t* in, uint8_t* out, size_t n_blocks) const;
    std::array<uint8_t, 16> encrypt_block(const std::array<uint8_t, 16>& in) const;

  private:
    void* ctx_;
};

// F(seed, (j, i)) -> n pseudorandom elements of Z_M.
//
// Construction: subkey = AES_seed(j||i); element s is the big-endian
// concatenation of ceil((bits(M)+64)/128) blocks AES_subkey(s*nb + b),
// b = 0..nb-1, reduced mod M. The 64 surplus bits keep the reduction within
// statistical distance 2^-64 of uniform.
std::vector<mpz_class> prf_mask(const PrfSeed& seed, uint64_t tree_tag, uint64_t node_tag,
                                size_t n, const mpz_class& modulus);

// XOR keystream for OT payloads: blocks AES_key(index || blk).
void xor_keystream(const std::array<uint8_t, 16>& key, uint64_t index, uint8_t* data, size_t len);

}  // namespace forestveil::crypto
