// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "forestveil/lhe/encoding.hpp"
#include "forestveil/lhe/paillier.hpp"
#include "support.hpp"

using namespace forestveil;
using test::shared_keys;

TEST_CASE("keygen produces a usable key pair") {
    const lhe::KeyPair& keys = shared_keys();
    // message group larger than 2^64
    mpz_class two64 = mpz_class(1) << 64;
    CHECK(keys.pk.group().modulus > two64);
    CHECK(mpz_sizeinbase(keys.pk.n().get_mpz_t(), 2) == 1024);

    util::Rng rng(1);
    CHECK(lhe::decrypt(keys.sk, lhe::encrypt(keys.pk, 0, rng)) == 0);
}

TEST_CASE("keygen rejects unsupported sizes") {
    util::Rng rng(2);
    CHECK_THROWS_AS(lhe::keygen(512, rng), lhe::LheError);
    CHECK_THROWS_AS(lhe::keygen(1536, rng), lhe::LheError);
}

TEST_CASE("repeated keygen yields distinct moduli") {
    util::Rng rng(3);
    lhe::KeyPair a = lhe::keygen(1024, rng);
    lhe::KeyPair b = lhe::keygen(1024, rng);
    CHECK(a.pk.n() != b.pk.n());
    CHECK(a.pk.n() != shared_keys().pk.n());
}

TEST_CASE("encrypt/decrypt round trip") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(4);
    CHECK(lhe::decrypt(keys.sk, lhe::encrypt(keys.pk, 42, rng)) == 42);

    // upper-half convention: M-5 decodes signed to -5
    mpz_class m5 = keys.pk.group().modulus - 5;
    mpz_class dec = lhe::decrypt(keys.sk, lhe::encrypt(keys.pk, m5, rng));
    CHECK(keys.pk.group().decode_signed(dec) == -5);

    // probabilistic encryption: same plaintext, distinct ciphertexts
    lhe::Ciphertext c1 = lhe::encrypt(keys.pk, 7, rng);
    lhe::Ciphertext c2 = lhe::encrypt(keys.pk, 7, rng);
    CHECK(c1.value != c2.value);
    CHECK(lhe::decrypt(keys.sk, c1) == 7);
    CHECK(lhe::decrypt(keys.sk, c2) == 7);
}

TEST_CASE("sk-side encryption matches the public path") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(5);
    for (int i = 0; i < 25; ++i) {
        mpz_class m = rng.below(keys.pk.n());
        CHECK(lhe::decrypt(keys.sk, lhe::encrypt_with_sk(keys.sk, m, rng)) == m);
    }
}

TEST_CASE("homomorphic addition") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(6);
    auto enc = [&](const mpz_class& m) { return lhe::encrypt(keys.pk, m, rng); };

    CHECK(lhe::decrypt(keys.sk, lhe::hom_add(keys.pk, enc(5), enc(7))) == 12);

    mpz_class m = rng.below(keys.pk.n());
    CHECK(lhe::decrypt(keys.sk, lhe::hom_add(keys.pk, enc(m), enc(0))) == m);

    // fold of ten random ciphertexts equals the plaintext sum mod M
    mpz_class sum = 0;
    lhe::Ciphertext acc = enc(0);
    for (int i = 0; i < 10; ++i) {
        mpz_class v = rng.below(keys.pk.n());
        sum = (sum + v) % keys.pk.group().modulus;
        acc = lhe::hom_add(keys.pk, acc, enc(v));
    }
    CHECK(lhe::decrypt(keys.sk, acc) == sum);
}

TEST_CASE("plain addition") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(7);
    lhe::Ciphertext c = lhe::encrypt(keys.pk, 100, rng);
    CHECK(lhe::decrypt(keys.sk, lhe::add_plain(keys.pk, c, -40)) == 60);
}

TEST_CASE("scalar multiplication") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(8);
    auto enc = [&](int64_t m) { return lhe::encrypt(keys.pk, m, rng); };

    CHECK(lhe::decrypt(keys.sk, lhe::scalar_mul(keys.pk, 3, enc(4))) == 12);

    lhe::Ciphertext c = enc(1234);
    CHECK(lhe::decrypt(keys.sk, lhe::scalar_mul(keys.pk, 1, c)) == 1234);

    mpz_class dec = lhe::decrypt(keys.sk, lhe::scalar_mul(keys.pk, -2, enc(10)));
    CHECK(keys.pk.group().decode_signed(dec) == -20);
}

TEST_CASE("homomorphic invariants on random values") {
    const lhe::KeyPair& keys = shared_keys();
    const mpz_class& M = keys.pk.group().modulus;
    util::Rng rng(9);
    for (int i = 0; i < 50; ++i) {
        mpz_class m1 = rng.below(M), m2 = rng.below(M);
        mpz_class a = rng.below(mpz_class(1) << 64);
        lhe::Ciphertext c1 = lhe::encrypt(keys.pk, m1, rng);
        lhe::Ciphertext c2 = lhe::encrypt(keys.pk, m2, rng);
        CHECK(lhe::decrypt(keys.sk, lhe::hom_add(keys.pk, c1, c2)) == (m1 + m2) % M);
        CHECK(lhe::decrypt(keys.sk, lhe::scalar_mul(keys.pk, a, c1)) == a * m1 % M);
    }
}

TEST_CASE("hom_dot equals the plaintext inner product") {
    const lhe::KeyPair& keys = shared_keys();
    const mpz_class& M = keys.pk.group().modulus;
    util::Rng rng(10);
    std::vector<lhe::Ciphertext> cts;
    std::vector<mpz_class> exps;
    mpz_class expect = 0;
    for (int i = 0; i < 12; ++i) {
        mpz_class m = rng.below(M);
        mpz_class e = rng.below(M);
        expect = (expect + m * e) % M;
        cts.push_back(lhe::encrypt(keys.pk, m, rng));
        exps.push_back(e);
    }
    lhe::HomDotContext ctx(keys.pk, cts);
    CHECK(lhe::decrypt(keys.sk, ctx.dot(exps)) == expect);

    SUBCASE("zero and tiny exponents") {
        std::fill(exps.begin(), exps.end(), 0);
        CHECK(lhe::decrypt(keys.sk, ctx.dot(exps)) == 0);
        exps[3] = 1;
        CHECK_NOTHROW(ctx.dot(exps));
    }
}

TEST_CASE("fixed-point encoding") {
    const lhe::KeyPair& keys = shared_keys();
    const lhe::MessageGroup& g = keys.pk.group();

    CHECK(lhe::encode_fixed(g, 1.234) == 1234);
    CHECK(lhe::encode_fixed(g, -0.001) == g.modulus - 1);
    CHECK(lhe::to_milli(-1000.0) == -1000000);

    CHECK_THROWS_AS(lhe::to_milli(1000.001), lhe::LheError);
    CHECK_THROWS_AS(lhe::to_milli(0.0001), lhe::LheError);
    CHECK_THROWS_AS(lhe::to_milli(12.3456), lhe::LheError);

    // encode then decode is the identity on the grid
    util::Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        int64_t milli = int64_t(rng.uniform(0, 2000000)) - 1000000;
        double v = lhe::from_milli(milli);
        CHECK(lhe::decode_fixed(g, lhe::encode_fixed(g, v)) == v);
    }
}

TEST_CASE("serialization round trips are byte-identical") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(12);

    Bytes pk_bytes = keys.pk.serialize();
    CHECK(lhe::PublicKey::parse(pk_bytes).serialize() == pk_bytes);

    Bytes sk_bytes = keys.sk.serialize();
    CHECK(lhe::SecretKey::parse(sk_bytes).serialize() == sk_bytes);

    lhe::Ciphertext ct = lhe::encrypt(keys.pk, 99, rng);
    Bytes ct_bytes = lhe::serialize_ciphertext(keys.pk, ct);
    util::ByteReader r(ct_bytes);
    lhe::Ciphertext back = lhe::parse_ciphertext(keys.pk, r);
    CHECK(back.value == ct.value);
    CHECK(lhe::serialize_ciphertext(keys.pk, back) == ct_bytes);
}

TEST_CASE("malformed inputs are rejected") {
    const lhe::KeyPair& keys = shared_keys();
    util::Rng rng(13);

    // truncated ciphertext bytes
    Bytes bad = lhe::serialize_ciphertext(keys.pk, lhe::encrypt(keys.pk, 1, rng));
    bad.resize(bad.size() / 2);
    util::ByteReader r(bad);
    CHECK_THROWS(lhe::parse_ciphertext(keys.pk, r));

    // ciphertext under a different key is detected via the modulus check
    lhe::KeyPair other = lhe::keygen(1024, rng);
    lhe::Ciphertext foreign = lhe::encrypt(other.pk, 5, rng);
    lhe::Ciphertext ours = lhe::encrypt(keys.pk, 5, rng);
    CHECK_THROWS_AS(lhe::hom_add(keys.pk, ours, foreign), lhe::LheError);
    CHECK_THROWS_AS(lhe::decrypt(keys.sk, foreign), lhe::LheError);

    // key files with the wrong magic
    Bytes pk_bytes = keys.pk.serialize();
    pk_bytes[0] ^= 0xff;
    CHECK_THROWS_AS(lhe::PublicKey::parse(pk_bytes), lhe::LheError);
}
