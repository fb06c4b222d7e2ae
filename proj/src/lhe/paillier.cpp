// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/lhe/paillier.hpp"

#include <algorithm>
#include <cstring>

#include "forestveil/bench/counters.hpp"

namespace forestveil::lhe {

namespace {

constexpr char kPkMagic[4] = {'F', 'V', 'P', 'K'};
constexpr char kSkMagic[4] = {'F', 'V', 'S', 'K'};
constexpr uint8_t kKeyVersion = 1;

uint64_t fnv1a(const Bytes& data) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (uint8_t b : data) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

bool supported_bits(uint32_t bits) { return bits == 1024 || bits == 2048 || bits == 3072; }

mpz_class random_prime(uint32_t bits, util::Rng& rng) {
    // Top two bits set so the product of two such primes keeps full width.
    mpz_class cand = rng.bits(bits);
    mpz_setbit(cand.get_mpz_t(), bits - 1);
    mpz_setbit(cand.get_mpz_t(), bits - 2);
    mpz_class p;
    mpz_nextprime(p.get_mpz_t(), cand.get_mpz_t());
    return p;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

void check_key(const PublicKey& pk, const Ciphertext& ct, const char* op) {
    if (ct.key_id != pk.key_id())
        throw LheError(std::string(op) + ": ciphertext does not match public key");
}

}  // namespace

PublicKey::PublicKey(uint32_t bits, mpz_class n) : bits_(bits), n_(std::move(n)) {
    n2_ = n_ * n_;
    key_id_ = fnv1a(util::mpz_to_bytes(n_));
    group_.modulus = n_;
}

Bytes PublicKey::serialize() const {
    util::ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kPkMagic), 4);
    w.u8(kKeyVersion);
    w.u32(bits_);
    w.mpz(n_);
    return w.take();
}

PublicKey PublicKey::parse(const Bytes& data) {
    util::ByteReader r(data);
    Bytes magic = r.raw(4);
    if (std::memcmp(magic.data(), kPkMagic, 4) != 0) throw LheError("not a public key file");
    if (r.u8() != kKeyVersion) throw LheError("unsupported public key version");
    uint32_t bits = r.u32();
    mpz_class n = r.mpz();
    r.expect_end();
    if (!supported_bits(bits)) throw LheError("unsupported key size");
    return PublicKey(bits, std::move(n));
}

SecretKey::SecretKey(uint32_t bits, mpz_class p, mpz_class q)
    : pk_(bits, p * q), p_(std::move(p)), q_(std::move(q)) {
    precompute();
}

void SecretKey::precompute() {
    const mpz_class& n = pk_.n();
    p2_ = p_ * p_;
    q2_ = q_ * q_;
    if (mpz_invert(q_inv_p_.get_mpz_t(), q_.get_mpz_t(), p_.get_mpz_t()) == 0)
        throw LheError("degenerate key: q not invertible mod p");
    if (mpz_invert(q2_inv_p2_.get_mpz_t(), q2_.get_mpz_t(), p2_.get_mpz_t()) == 0)
        throw LheError("degenerate key: q^2 not invertible mod p^2");

    // h_p = (L_p((1+n)^(p-1) mod p^2))^{-1} mod p, and likewise for q.
    auto half_constant = [&](const mpz_class& prime, const mpz_class& prime2) {
        mpz_class g = 1 + n;
        mpz_class u = powm(g, prime - 1, prime2);
        mpz_class l = (u - 1) / prime;
        mpz_class h;
        if (mpz_invert(h.get_mpz_t(), l.get_mpz_t(), prime.get_mpz_t()) == 0)
            throw LheError("degenerate key: decryption constant not invertible");
        return h;
    };
    hp_ = half_constant(p_, p2_);
    hq_ = half_constant(q_, q2_);

    ep_ = n % (p_ * (p_ - 1));
    eq_ = n % (q_ * (q_ - 1));
}

Bytes SecretKey::serialize() const {
    util::ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kSkMagic), 4);
    w.u8(kKeyVersion);
    w.u32(pk_.bits());
    w.mpz(p_);
    w.mpz(q_);
    return w.take();
}

SecretKey SecretKey::parse(const Bytes& data) {
    util::ByteReader r(data);
    Bytes magic = r.raw(4);
    if (std::memcmp(magic.data(), kSkMagic, 4) != 0) throw LheError("not a secret key file");
    if (r.u8() != kKeyVersion) throw LheError("unsupported secret key version");
    uint32_t bits = r.u32();
    mpz_class p = r.mpz();
    mpz_class q = r.mpz();
    r.expect_end();
    if (!supported_bits(bits)) throw LheError("unsupported key size");
    return SecretKey(bits, std::move(p), std::move(q));
}

KeyPair keygen(uint32_t security_bits, util::Rng& rng) {
    if (!supported_bits(security_bits))
        throw LheError("unsupported key size (expected 1024, 2048 or 3072 bits)");
    uint32_t half = security_bits / 2;
    for (;;) {
        mpz_class p = random_prime(half, rng);
        mpz_class q = random_prime(half, rng);
        if (p == q) continue;
        mpz_class n = p * q;
        if (mpz_sizeinbase(n.get_mpz_t(), 2) != security_bits) continue;
        mpz_class phi = (p - 1) * (q - 1);
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), phi.get_mpz_t());
        if (g != 1) continue;
        SecretKey sk(security_bits, std::move(p), std::move(q));
        PublicKey pk = sk.public_key();
        return {std::move(pk), std::move(sk)};
    }
}

Ciphertext encrypt(const PublicKey& pk, const mpz_class& m, util::Rng& rng) {
    const mpz_class& n = pk.n();
    const mpz_class& n2 = pk.n_squared();
    mpz_class mr = pk.group().encode_signed(m);
    mpz_class r;
    do {
        r = rng.below(n);
    } while (sgn(r) == 0 || gcd(r, n) != 1);
    mpz_class c = ((1 + mr * n) % n2) * powm(r, n, n2) % n2;
    bench::count_encryptions();
    return {std::move(c), pk.key_id()};
}

Ciphertext encrypt_with_sk(const SecretKey& sk, const mpz_class& m, util::Rng& rng) {
    const PublicKey& pk = sk.pk_;
    const mpz_class& n = pk.n();
    mpz_class mr = pk.group().encode_signed(m);
    mpz_class gm = 1 + mr * n;

    auto half = [&](const mpz_class& prime, const mpz_class& prime2, const mpz_class& e) {
        mpz_class r;
        do {
            r = rng.below(prime2);
        } while (sgn(r) == 0 || gcd(r, prime) != 1);
        return mpz_class(gm % prime2 * powm(r, e, prime2) % prime2);
    };
    mpz_class cp = half(sk.p_, sk.p2_, sk.ep_);
    mpz_class cq = half(sk.q_, sk.q2_, sk.eq_);

    mpz_class t = (cp - cq) * sk.q2_inv_p2_ % sk.p2_;
    if (sgn(t) < 0) t += sk.p2_;
    mpz_class c = cq + sk.q2_ * t;
    bench::count_encryptions();
    return {std::move(c), pk.key_id()};
}

mpz_class decrypt(const SecretKey& sk, const Ciphertext& ct) {
    check_key(sk.pk_, ct, "decrypt");
    if (sgn(ct.value) < 0 || ct.value >= sk.pk_.n_squared())
        throw LheError("decrypt: ciphertext out of range");
    auto half = [&](const mpz_class& prime, const mpz_class& prime2, const mpz_class& h) {
        mpz_class u = powm(ct.value, prime - 1, prime2);
        mpz_class l = (u - 1) / prime;
        return mpz_class(l * h % prime);
    };
    mpz_class mp = half(sk.p_, sk.p2_, sk.hp_);
    mpz_class mq = half(sk.q_, sk.q2_, sk.hq_);
    mpz_class t = (mp - mq) * sk.q_inv_p_ % sk.p_;
    if (sgn(t) < 0) t += sk.p_;
    bench::count_decryptions();
    return (mq + sk.q_ * t) % sk.pk_.n();
}

Ciphertext hom_add(const PublicKey& pk, const Ciphertext& a, const Ciphertext& b) {
    check_key(pk, a, "hom_add");
    check_key(pk, b, "hom_add");
    bench::count_hom_adds();
    return {a.value * b.value % pk.n_squared(), pk.key_id()};
}

Ciphertext add_plain(const PublicKey& pk, const Ciphertext& a, const mpz_class& v) {
    check_key(pk, a, "add_plain");
    mpz_class vr = pk.group().encode_signed(v);
    bench::count_hom_adds();
    return {a.value * ((1 + vr * pk.n()) % pk.n_squared()) % pk.n_squared(), pk.key_id()};
}

Ciphertext scalar_mul(const PublicKey& pk, const mpz_class& a, const Ciphertext& ct) {
    check_key(pk, ct, "scalar_mul");
    const mpz_class& n = pk.n();
    const mpz_class& n2 = pk.n_squared();
    mpz_class e = pk.group().encode_signed(a);
    mpz_class base = ct.value;
    // Centered exponent: for scalars in the upper half, exponentiate the
    // inverse so small negative scalars stay cheap.
    if (e * 2 > n) {
        if (mpz_invert(base.get_mpz_t(), base.get_mpz_t(), n2.get_mpz_t()) == 0)
            throw LheError("scalar_mul: ciphertext not invertible");
        e = n - e;
    }
    bench::count_scalar_muls();
    return {powm(base, e, n2), pk.key_id()};
}

namespace {

constexpr unsigned kWindow = 6;
constexpr size_t kTableSize = size_t(1) << (kWindow - 1);

struct WindowDigit {
    uint32_t pos;
    uint32_t val;  // odd, < 2^kWindow
};

void decompose(const mpz_class& e, std::vector<WindowDigit>& out) {
    out.clear();
    size_t top = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (sgn(e) == 0) return;
    size_t i = 0;
    while (i < top) {
        if (mpz_tstbit(e.get_mpz_t(), i) == 0) {
            ++i;
            continue;
        }
        uint32_t v = 0;
        for (unsigned b = 0; b < kWindow; ++b)
            if (i + b < top && mpz_tstbit(e.get_mpz_t(), i + b)) v |= 1u << b;
        out.push_back({uint32_t(i), v});
        i += kWindow;
    }
}

}  // namespace

HomDotContext::HomDotContext(const PublicKey& pk, std::span<const Ciphertext> bases) : pk_(pk) {
    const mpz_class& n2 = pk.n_squared();
    tables_.reserve(bases.size());
    for (const Ciphertext& ct : bases) {
        check_key(pk, ct, "hom_dot");
        std::vector<mpz_class> tab;
        tab.reserve(kTableSize);
        tab.push_back(ct.value);
        mpz_class sq = ct.value * ct.value % n2;
        for (size_t k = 1; k < kTableSize; ++k) tab.push_back(tab.back() * sq % n2);
        tables_.push_back(std::move(tab));
    }
}

Ciphertext HomDotContext::dot(std::span<const mpz_class> exponents) const {
    if (exponents.size() != tables_.size())
        throw LheError("hom_dot: exponent count does not match base count");
    const mpz_class& n2 = pk_.n_squared();
    const mpz_class& n = pk_.n();

    size_t k = tables_.size();
    std::vector<std::vector<WindowDigit>> digits(k);
    std::vector<size_t> cursor(k, 0);
    long top = -1;
    for (size_t b = 0; b < k; ++b) {
        mpz_class e = exponents[b] % n;
        if (sgn(e) < 0) e += n;
        decompose(e, digits[b]);
        if (!digits[b].empty()) top = std::max(top, long(digits[b].back().pos));
        // iterate digits from the highest position downward
        std::reverse(digits[b].begin(), digits[b].end());
    }

    mpz_class acc = 1;
    bool started = false;
    for (long pos = top; pos >= 0; --pos) {
        if (started) acc = acc * acc % n2;
        for (size_t b = 0; b < k; ++b) {
            auto& ds = digits[b];
            size_t& c = cursor[b];
            if (c < ds.size() && long(ds[c].pos) == pos) {
                acc = acc * tables_[b][(ds[c].val - 1) / 2] % n2;
                started = true;
                ++c;
            }
        }
    }
    bench::count_scalar_muls(k);
    if (k > 0) bench::count_hom_adds(k - 1);
    return {std::move(acc), pk_.key_id()};
}

Bytes serialize_ciphertext(const PublicKey& pk, const Ciphertext& ct) {
    util::ByteWriter w;
    w.mpz_fixed(ct.value, pk.ciphertext_bytes());
    return w.take();
}

Ciphertext parse_ciphertext(const PublicKey& pk, util::ByteReader& r) {
    mpz_class v = r.mpz(pk.ciphertext_bytes());
    if (v >= pk.n_squared()) throw LheError("ciphertext value out of range");
    return {std::move(v), pk.key_id()};
}

}  // namespace forestveil::lhe
