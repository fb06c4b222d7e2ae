// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/util/rng.hpp"

namespace forestveil::util {

namespace {

uint64_t entropy_seed() {
    uint64_t s;
    random_bytes(reinterpret_cast<uint8_t*>(&s), sizeof(s));
    return s;
}

}  // namespace

Rng::Rng() : Rng(entropy_seed()) {}

Rng::Rng(uint64_t seed) : gen_(seed), grand_(std::make_unique<gmp_randclass>(gmp_randinit_mt)) {
    grand_->seed(static_cast<unsigned long>(gen_()));
}

mpz_class Rng::below(const mpz_class& bound) { return grand_->get_z_range(bound); }

mpz_class Rng::bits(size_t bits) {
    mpz_class v = grand_->get_z_bits(static_cast<unsigned long>(bits));
    mpz_setbit(v.get_mpz_t(), bits - 1);
    return v;
}

void Rng::fill(uint8_t* buf, size_t len) {
    for (size_t i = 0; i < len; i += 8) {
        uint64_t w = gen_();
        for (size_t j = 0; j < 8 && i + j < len; ++j) buf[i + j] = uint8_t(w >> (8 * j));
    }
}

}  // namespace forestveil::util
