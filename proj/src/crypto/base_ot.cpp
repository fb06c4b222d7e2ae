// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/crypto/base_ot.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>
#include <openssl/sha.h>

#include <cstring>
#include <mutex>
#include <stdexcept>

#include "forestveil/bench/counters.hpp"

namespace forestveil::crypto {

namespace {
[[noreturn]] void fail(const char* what) { throw std::runtime_error(std::string("base_ot: ") + what); }
}  // namespace

struct EcGroup::Impl {
    EC_GROUP* group = nullptr;
    BIGNUM* order = nullptr;
    EC_POINT* offset = nullptr;  // the fixed point C

    ~Impl() {
        EC_POINT_free(offset);
        BN_free(order);
        EC_GROUP_free(group);
    }
};

EcGroup::EcGroup(int nid) : impl_(std::make_unique<Impl>()) {
    impl_->group = EC_GROUP_new_by_curve_name(nid);
    if (!impl_->group) fail("unknown curve");
    impl_->order = BN_new();
    if (EC_GROUP_get_order(impl_->group, impl_->order, nullptr) != 1) fail("group order");

    // Derive the offset point C by hashing to an x coordinate; nobody knows
    // its discrete log.
    BN_CTX* ctx = BN_CTX_new();
    impl_->offset = EC_POINT_new(impl_->group);
    static const char* domain = "forestveil/base-ot/offset/v1";
    for (uint32_t ctr = 0;; ++ctr) {
        uint8_t buf[64];
        size_t dl = strlen(domain);
        std::memcpy(buf, domain, dl);
        util::put_u32_be(buf + dl, ctr);
        uint8_t digest[32];
        SHA256(buf, dl + 4, digest);
        BIGNUM* x = BN_bin2bn(digest, 32, nullptr);
        int ok = EC_POINT_set_compressed_coordinates(impl_->group, impl_->offset, x, 0, ctx);
        BN_free(x);
        if (ok == 1) break;
        if (ctr > 1000) fail("hash-to-curve did not converge");
    }
    BN_CTX_free(ctx);
}

EcGroup::~EcGroup() = default;

const EcGroup& EcGroup::p256() {
    static EcGroup g(NID_X9_62_prime256v1);
    return g;
}

namespace {

Bytes point_to_bytes(const EcGroup& g, const EC_POINT* p, BN_CTX* ctx) {
    Bytes out(g.point_bytes());
    size_t len = EC_POINT_point2oct(g.impl().group, p, POINT_CONVERSION_COMPRESSED, out.data(),
                                    out.size(), ctx);
    if (len != out.size()) fail("point encode");
    return out;
}

EC_POINT* point_from_bytes(const EcGroup& g, const Bytes& b, BN_CTX* ctx) {
    EC_POINT* p = EC_POINT_new(g.impl().group);
    if (EC_POINT_oct2point(g.impl().group, p, b.data(), b.size(), ctx) != 1) {
        EC_POINT_free(p);
        fail("malformed group element");
    }
    return p;
}

BIGNUM* random_scalar(const EcGroup& g, util::Rng& rng) {
    // Uniform below the group order via 64 surplus bits.
    Bytes buf(40);
    rng.fill(buf.data(), buf.size());
    BIGNUM* wide = BN_bin2bn(buf.data(), int(buf.size()), nullptr);
    BIGNUM* out = BN_new();
    BN_CTX* ctx = BN_CTX_new();
    BN_mod(out, wide, g.impl().order, ctx);
    BN_CTX_free(ctx);
    BN_free(wide);
    return out;
}

Key128 derive_pad(uint64_t tag, uint8_t selector, const Bytes& point) {
    uint8_t buf[9 + 64];
    util::put_u64_be(buf, tag);
    buf[8] = selector;
    std::memcpy(buf + 9, point.data(), point.size());
    uint8_t digest[32];
    SHA256(buf, 9 + point.size(), digest);
    Key128 k;
    std::memcpy(k.data(), digest, 16);
    return k;
}

Key128 xor_key(const Key128& a, const Key128& b) {
    Key128 out;
    for (size_t i = 0; i < 16; ++i) out[i] = a[i] ^ b[i];
    return out;
}

}  // namespace

BaseOtReceiver::BaseOtReceiver(const EcGroup& group, uint64_t tag, bool choice, util::Rng& rng)
    : group_(&group), tag_(tag), choice_(choice) {
    BN_CTX* ctx = BN_CTX_new();
    BIGNUM* k = random_scalar(group, rng);
    EC_POINT* b_pt = EC_POINT_new(group.impl().group);
    // B = k*G (+ C when choice = 1)
    if (EC_POINT_mul(group.impl().group, b_pt, k, nullptr, nullptr, ctx) != 1) fail("point mul");
    if (choice) {
        if (EC_POINT_add(group.impl().group, b_pt, b_pt, group.impl().offset, ctx) != 1)
            fail("point add");
    }
    msg_.point_b = point_to_bytes(group, b_pt, ctx);
    secret_.resize(32);
    BN_bn2binpad(k, secret_.data(), 32);
    EC_POINT_free(b_pt);
    BN_free(k);
    BN_CTX_free(ctx);
    bench::count_ot_base_calls();
}

BaseOtReceiver::~BaseOtReceiver() = default;
BaseOtReceiver::BaseOtReceiver(BaseOtReceiver&&) noexcept = default;
BaseOtReceiver& BaseOtReceiver::operator=(BaseOtReceiver&&) noexcept = default;

Key128 BaseOtReceiver::finish(const BaseOtSenderMsg& reply) const {
    BN_CTX* ctx = BN_CTX_new();
    EC_POINT* a_pt = point_from_bytes(*group_, reply.point_a, ctx);
    BIGNUM* k = BN_bin2bn(secret_.data(), int(secret_.size()), nullptr);
    EC_POINT* shared = EC_POINT_new(group_->impl().group);
    if (EC_POINT_mul(group_->impl().group, shared, nullptr, a_pt, k, ctx) != 1) fail("point mul");
    Key128 pad = derive_pad(tag_, choice_ ? 1 : 0, point_to_bytes(*group_, shared, ctx));
    EC_POINT_free(shared);
    EC_POINT_free(a_pt);
    BN_free(k);
    BN_CTX_free(ctx);
    return xor_key(choice_ ? reply.enc_key1 : reply.enc_key0, pad);
}

BaseOtSenderMsg base_ot_send(const EcGroup& group, uint64_t tag, const BaseOtReceiverMsg& request,
                             const Key128& key0, const Key128& key1, util::Rng& rng) {
    BN_CTX* ctx = BN_CTX_new();
    EC_POINT* b_pt = point_from_bytes(group, request.point_b, ctx);
    BIGNUM* a = random_scalar(group, rng);

    EC_POINT* a_pt = EC_POINT_new(group.impl().group);
    if (EC_POINT_mul(group.impl().group, a_pt, a, nullptr, nullptr, ctx) != 1) fail("point mul");

    // pad0 = H(a*B), pad1 = H(a*(B - C))
    EC_POINT* s0 = EC_POINT_new(group.impl().group);
    if (EC_POINT_mul(group.impl().group, s0, nullptr, b_pt, a, ctx) != 1) fail("point mul");
    Key128 pad0 = derive_pad(tag, 0, point_to_bytes(group, s0, ctx));

    EC_POINT* neg_c = EC_POINT_dup(group.impl().offset, group.impl().group);
    if (EC_POINT_invert(group.impl().group, neg_c, ctx) != 1) fail("point invert");
    if (EC_POINT_add(group.impl().group, b_pt, b_pt, neg_c, ctx) != 1) fail("point add");
    EC_POINT* s1 = EC_POINT_new(group.impl().group);
    if (EC_POINT_mul(group.impl().group, s1, nullptr, b_pt, a, ctx) != 1) fail("point mul");
    Key128 pad1 = derive_pad(tag, 1, point_to_bytes(group, s1, ctx));

    BaseOtSenderMsg out;
    out.point_a = point_to_bytes(group, a_pt, ctx);
    out.enc_key0 = xor_key(key0, pad0);
    out.enc_key1 = xor_key(key1, pad1);

    EC_POINT_free(s1);
    EC_POINT_free(neg_c);
    EC_POINT_free(s0);
    EC_POINT_free(a_pt);
    EC_POINT_free(b_pt);
    BN_free(a);
    BN_CTX_free(ctx);
    bench::count_ot_base_calls();
    return out;
}

}  // namespace forestveil::crypto
