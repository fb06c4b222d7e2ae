// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <random>

#include "forestveil/util/bytes.hpp"

namespace forestveil::util {

// Per-task randomness source. Not thread safe; each concurrent task owns one.
class Rng {
  public:
    Rng();                        // seeded from the OS entropy source
    explicit Rng(uint64_t seed);  // deterministic stream for tests/replicates

    uint64_t u64() { return gen_(); }

    // Uniform in [lo, hi], inclusive.
    uint64_t uniform(uint64_t lo, uint64_t hi) {
        return std::uniform_int_distribution<uint64_t>(lo, hi)(gen_);
    }

    bool bit() { return (gen_() & 1) != 0; }
    int8_t sign() { return bit() ? int8_t(1) : int8_t(-1); }
    double real01() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

    // Uniform in [0, bound).
    mpz_class below(const mpz_class& bound);
    // Uniform with exactly `bits` random bits.
    mpz_class bits(size_t bits);

    void fill(uint8_t* buf, size_t len);
    Bytes bytes(size_t len) {
        Bytes b(len);
        fill(b.data(), len);
        return b;
    }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
    std::unique_ptr<gmp_randclass> grand_;
};

}  // namespace forestveil::util
