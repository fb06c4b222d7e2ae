// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "forestveil/lhe/paillier.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::protocol {

class ProtocolError : public std::runtime_error {
  public:
    explicit ProtocolError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a run reaches an inconsistent state (for honest-but-curious
// parties this indicates corruption or a bug, never tolerated input).
class ProtocolAbort : public std::runtime_error {
  public:
    explicit ProtocolAbort(const std::string& what) : std::runtime_error(what) {}
};

// Secure-comparison parameters: the compared value a must satisfy |a| < 2^l;
// blinding draws r from [2, R] with R = 2^(2l), s from [1, r-1]. The lower
// bounds keep alpha*beta = sign(a) exact at a = 0 while preserving the
// hiding range.
struct ScParams {
    unsigned value_bits = 21;

    uint64_t r_upper() const { return uint64_t(1) << (2 * value_bits); }
    void validate(const lhe::PublicKey& pk) const;
};

struct ScPart1Result {
    int8_t alpha = 1;
    lhe::Ciphertext blinded;  // c' = Mult(alpha*r, a') ⊞ alpha*s
};

// Party 1 holds a' = Enc(a). Output: alpha and the blinded ciphertext for
// party 2, with alpha * sign(Dec(c')) = sign(a).
ScPart1Result sc_party1(const lhe::PublicKey& pk, const lhe::Ciphertext& a, const ScParams& params,
                        util::Rng& rng);

// Deterministic core with explicit randomness; validates 2 <= r <= R and
// 1 <= s < r.
ScPart1Result sc_party1_with(const lhe::PublicKey& pk, const lhe::Ciphertext& a,
                             const ScParams& params, int8_t alpha, uint64_t r, uint64_t s);

// Party 2 decrypts and takes the sign of the centered representative.
int8_t sc_party2(const lhe::SecretKey& sk, const lhe::Ciphertext& blinded);

}  // namespace forestveil::protocol
