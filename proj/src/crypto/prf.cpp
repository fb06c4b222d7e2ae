// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/crypto/prf.hpp"

#include <openssl/evp.h>

#include <stdexcept>

#include "forestveil/bench/counters.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::crypto {

std::array<uint64_t, 2> PrfSeed::halves() const {
    return {util::get_u64_be(key.data()), util::get_u64_be(key.data() + 8)};
}

PrfSeed PrfSeed::from_halves(uint64_t hi, uint64_t lo) {
    PrfSeed s;
    util::put_u64_be(s.key.data(), hi);
    util::put_u64_be(s.key.data() + 8, lo);
    return s;
}

Aes128::Aes128(const std::array<uint8_t, 16>& key) {
    EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
    if (!ctx || EVP_EncryptInit_ex(ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr) != 1)
        throw std::runtime_error("AES init failed");
    EVP_CIPHER_CTX_set_padding(ctx, 0);
    ctx_ = ctx;
}

Aes128::~Aes128() { EVP_CIPHER_CTX_free(static_cast<EVP_CIPHER_CTX*>(ctx_)); }

void Aes128::encrypt_blocks(const uint8_t* in, uint8_t* out, size_t n_blocks) const {
    int outl = 0;
    if (EVP_EncryptUpdate(static_cast<EVP_CIPHER_CTX*>(ctx_), out, &outl, in, int(n_blocks * 16)) != 1 ||
        outl != int(n_blocks * 16))
        throw std::runtime_error("AES encrypt failed");
}

std::array<uint8_t, 16> Aes128::encrypt_block(const std::array<uint8_t, 16>& in) const {
    std::array<uint8_t, 16> out;
    encrypt_blocks(in.data(), out.data(), 1);
    return out;
}

std::vector<mpz_class> prf_mask(const PrfSeed& seed, uint64_t tree_tag, uint64_t node_tag,
                                size_t n, const mpz_class& modulus) {
    if (n == 0) throw std::invalid_argument("prf_mask: empty output");
    if (sgn(modulus) <= 0) throw std::invalid_argument("prf_mask: bad modulus");

    Aes128 master(seed.key);
    std::array<uint8_t, 16> tag;
    util::put_u64_be(tag.data(), tree_tag);
    util::put_u64_be(tag.data() + 8, node_tag);
    Aes128 sub(master.encrypt_block(tag));

    size_t mod_bits = mpz_sizeinbase(modulus.get_mpz_t(), 2);
    size_t blocks_per_elem = (mod_bits + 64 + 127) / 128;

    std::vector<uint8_t> counter(blocks_per_elem * 16, 0);
    std::vector<uint8_t> stream(blocks_per_elem * 16);
    std::vector<mpz_class> out;
    out.reserve(n);
    for (size_t s = 0; s < n; ++s) {
        for (size_t b = 0; b < blocks_per_elem; ++b)
            util::put_u64_be(counter.data() + b * 16 + 8, uint64_t(s * blocks_per_elem + b));
        sub.encrypt_blocks(counter.data(), stream.data(), blocks_per_elem);
        out.push_back(util::mpz_from_bytes(stream.data(), stream.size()) % modulus);
    }
    bench::count_prf_calls();
    return out;
}

void xor_keystream(const std::array<uint8_t, 16>& key, uint64_t index, uint8_t* data, size_t len) {
    Aes128 aes(key);
    std::array<uint8_t, 16> counter{};
    util::put_u64_be(counter.data(), index);
    std::array<uint8_t, 16> block;
    for (size_t off = 0, blk = 0; off < len; off += 16, ++blk) {
        util::put_u64_be(counter.data() + 8, uint64_t(blk));
        aes.encrypt_blocks(counter.data(), block.data(), 1);
        for (size_t i = 0; i < 16 && off + i < len; ++i) data[off + i] ^= block[i];
    }
}

}  // namespace forestveil::crypto
