// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "forestveil/util/bytes.hpp"
#include "forestveil/util/rng.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::lhe {

class LheError : public std::runtime_error {
  public:
    explicit LheError(const std::string& what) : std::runtime_error(what) {}
};

// Additive message group Z_M. Non-negative values occupy the lower half of
// the group, negative values the upper half.
struct MessageGroup {
    mpz_class modulus;

    mpz_class encode_signed(const mpz_class& v) const {
        mpz_class r = v % modulus;
        if (sgn(r) < 0) r += modulus;
        return r;
    }
    mpz_class encode_signed(int64_t v) const { return encode_signed(mpz_class(v)); }

    // Centered representative in (-M/2, M/2].
    mpz_class decode_signed(const mpz_class& e) const {
        mpz_class r = e % modulus;
        if (sgn(r) < 0) r += modulus;
        if (r * 2 > modulus) r -= modulus;
        return r;
    }

    // sign of the centered representative, with sign(0) = +1.
    int8_t sign_of(const mpz_class& e) const { return sgn(decode_signed(e)) < 0 ? int8_t(-1) : int8_t(1); }
};

struct Ciphertext {
    mpz_class value;
    uint64_t key_id = 0;

    bool operator==(const Ciphertext& o) const { return value == o.value && key_id == o.key_id; }
};

class PublicKey {
  public:
    PublicKey() = default;
    PublicKey(uint32_t bits, mpz_class n);

    uint32_t bits() const { return bits_; }
    const mpz_class& n() const { return n_; }
    const mpz_class& n_squared() const { return n2_; }
    uint64_t key_id() const { return key_id_; }
    const MessageGroup& group() const { return group_; }

    // Wire width of one serialized ciphertext value (magnitude bytes).
    size_t ciphertext_bytes() const { return (size_t(bits_) * 2 + 7) / 8; }
    // Wire width of one serialized message-group element.
    size_t element_bytes() const { return (size_t(bits_) + 7) / 8; }

    Bytes serialize() const;
    static PublicKey parse(const Bytes& data);

    bool operator==(const PublicKey& o) const { return bits_ == o.bits_ && n_ == o.n_; }

  private:
    uint32_t bits_ = 0;
    mpz_class n_;
    mpz_class n2_;
    uint64_t key_id_ = 0;
    MessageGroup group_;
};

class SecretKey {
  public:
    SecretKey() = default;
    SecretKey(uint32_t bits, mpz_class p, mpz_class q);

    const PublicKey& public_key() const { return pk_; }

    Bytes serialize() const;
    static SecretKey parse(const Bytes& data);

    // Decryption helpers (CRT form); used by decrypt() and encrypt_with_sk().
    friend mpz_class decrypt(const SecretKey&, const Ciphertext&);
    friend Ciphertext encrypt_with_sk(const SecretKey&, const mpz_class&, util::Rng&);

  private:
    void precompute();

    PublicKey pk_;
    mpz_class p_, q_;
    mpz_class p2_, q2_;      // p^2, q^2
    mpz_class hp_, hq_;      // CRT decryption constants
    mpz_class q_inv_p_;      // q^{-1} mod p
    mpz_class q2_inv_p2_;    // q^2^{-1} mod p^2
    mpz_class ep_, eq_;      // n mod p(p-1), n mod q(q-1)
};

struct KeyPair {
    PublicKey pk;
    SecretKey sk;
};

// security_bits is the modulus size; accepted sizes: 1024, 2048, 3072.
KeyPair keygen(uint32_t security_bits, util::Rng& rng);

Ciphertext encrypt(const PublicKey& pk, const mpz_class& m, util::Rng& rng);
// Same ciphertext distribution as encrypt(); uses the factorization to halve
// the exponentiation cost. Only the key holder can call it.
Ciphertext encrypt_with_sk(const SecretKey& sk, const mpz_class& m, util::Rng& rng);
mpz_class decrypt(const SecretKey& sk, const Ciphertext& ct);

// The paper's ⊙: ciphertext of the sum of the two plaintexts.
Ciphertext hom_add(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b);
// The paper's ⊞: adds a known value to an encrypted one without re-randomizing.
Ciphertext add_plain(const PublicKey& pk, const Ciphertext& a, const mpz_class& v);
// The paper's Mult(a, c): ciphertext of a*m. Signed scalars allowed.
Ciphertext scalar_mul(const PublicKey& pk, const mpz_class& a, const Ciphertext& ct);

// Interleaved multi-exponentiation over a fixed ciphertext vector: dot(e)
// computes a ciphertext of sum_i e[i]*m[i], sharing the squaring chain across
// the whole vector. Counts len(e) scalar multiplications and len(e)-1
// homomorphic additions; window tables are cached across calls.
class HomDotContext {
  public:
    HomDotContext(const PublicKey& pk, std::span<const Ciphertext> bases);

    Ciphertext dot(std::span<const mpz_class> exponents) const;
    size_t size() const { return tables_.size(); }

  private:
    const PublicKey& pk_;
    // odd powers base^1, base^3, ..., base^(2^w - 1)
    std::vector<std::vector<mpz_class>> tables_;
};

// Serialization: fixed-width value, 4-byte big-endian length prefix.
Bytes serialize_ciphertext(const PublicKey& pk, const Ciphertext& ct);
Ciphertext parse_ciphertext(const PublicKey& pk, util::ByteReader& r);

}  // namespace forestveil::lhe
