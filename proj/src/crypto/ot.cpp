// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/crypto/ot.hpp"

#include <algorithm>
#include <stdexcept>

namespace forestveil::crypto {

namespace {

[[noreturn]] void fail(const char* what) { throw std::runtime_error(std::string("ot: ") + what); }

void check_depth(size_t depth) {
    if (depth == 0 || depth > 20) fail("depth out of range");
}

}  // namespace

OtReceiver::OtReceiver(size_t depth, size_t index, util::Rng& rng) : depth_(depth), index_(index) {
    check_depth(depth);
    if (index >= (size_t(1) << depth)) fail("choice index out of range");
    base_.reserve(depth);
    msg_.base.reserve(depth);
    for (size_t j = 0; j < depth; ++j) {
        bool bit = (index >> j) & 1;
        base_.emplace_back(EcGroup::p256(), uint64_t(j), bit, rng);
        msg_.base.push_back(base_.back().message());
    }
}

std::optional<Bytes> OtReceiver::try_decrypt(const OtSenderMsg& reply, size_t index) const {
    if (reply.base.size() != depth_ || reply.ciphertexts.size() != (size_t(1) << depth_))
        fail("malformed sender message");
    if (index >= reply.ciphertexts.size()) fail("index out of range");
    Bytes buf = reply.ciphertexts[index];
    if (buf.size() < kOtTagBytes) fail("ciphertext too short");
    for (size_t j = 0; j < depth_; ++j) {
        Key128 key = base_[j].finish(reply.base[j]);
        xor_keystream(key, uint64_t(index), buf.data(), buf.size());
    }
    for (size_t i = buf.size() - kOtTagBytes; i < buf.size(); ++i)
        if (buf[i] != 0) return std::nullopt;
    buf.resize(buf.size() - kOtTagBytes);
    return buf;
}

Bytes OtReceiver::finish(const OtSenderMsg& reply) const {
    auto out = try_decrypt(reply, index_);
    if (!out) fail("authenticity tag check failed");
    return std::move(*out);
}

OtSenderMsg ot_send(const OtReceiverMsg& request, const std::vector<Bytes>& strings,
                    util::Rng& rng) {
    size_t depth = request.base.size();
    check_depth(depth);
    size_t count = size_t(1) << depth;
    if (strings.size() != count) fail("expected 2^d strings");
    size_t len = strings[0].size();
    for (const Bytes& s : strings)
        if (s.size() != len) fail("strings must have equal length");

    // Fresh key pairs per transfer; keystreams keyed by the index bits.
    std::vector<std::array<Key128, 2>> keys(depth);
    OtSenderMsg out;
    out.base.reserve(depth);
    for (size_t j = 0; j < depth; ++j) {
        rng.fill(keys[j][0].data(), 16);
        rng.fill(keys[j][1].data(), 16);
        out.base.push_back(
            base_ot_send(EcGroup::p256(), uint64_t(j), request.base[j], keys[j][0], keys[j][1], rng));
    }

    out.ciphertexts.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        Bytes buf(len + kOtTagBytes, 0);
        std::copy(strings[i].begin(), strings[i].end(), buf.begin());
        for (size_t j = 0; j < depth; ++j)
            xor_keystream(keys[j][(i >> j) & 1], uint64_t(i), buf.data(), buf.size());
        out.ciphertexts.push_back(std::move(buf));
    }
    return out;
}

}  // namespace forestveil::crypto
