// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/protocol/secure_compare.hpp"

namespace forestveil::protocol {

void ScParams::validate(const lhe::PublicKey& pk) const {
    if (value_bits == 0 || value_bits > 30) throw ProtocolError("secure compare: bad bit budget");
    size_t mod_bits = mpz_sizeinbase(pk.n().get_mpz_t(), 2);
    // |alpha(ra+s)| < 2^(3l+1) must stay clear of the wrap-around point.
    if (3 * size_t(value_bits) + 1 >= mod_bits)
        throw ProtocolError("secure compare: bit budget exceeds message group");
}

ScPart1Result sc_party1_with(const lhe::PublicKey& pk, const lhe::Ciphertext& a,
                             const ScParams& params, int8_t alpha, uint64_t r, uint64_t s) {
    params.validate(pk);
    if (alpha != 1 && alpha != -1) throw ProtocolError("secure compare: alpha must be +-1");
    if (r < 2 || r > params.r_upper() || s < 1 || s >= r)
        throw ProtocolError("secure compare: blinding values out of range");
    mpz_class ar = mpz_class(alpha) * mpz_class(r);
    mpz_class as = mpz_class(alpha) * mpz_class(s);
    lhe::Ciphertext c = lhe::add_plain(pk, lhe::scalar_mul(pk, ar, a), as);
    return {alpha, std::move(c)};
}

ScPart1Result sc_party1(const lhe::PublicKey& pk, const lhe::Ciphertext& a, const ScParams& params,
                        util::Rng& rng) {
    params.validate(pk);
    uint64_t r = rng.uniform(2, params.r_upper());
    uint64_t s = rng.uniform(1, r - 1);
    return sc_party1_with(pk, a, params, rng.sign(), r, s);
}

int8_t sc_party2(const lhe::SecretKey& sk, const lhe::Ciphertext& blinded) {
    mpz_class c = lhe::decrypt(sk, blinded);
    return sk.public_key().group().sign_of(c);
}

}  // namespace forestveil::protocol
