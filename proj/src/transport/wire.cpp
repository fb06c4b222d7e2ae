// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/wire.hpp"

#include "forestveil/transport/frame.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::transport {

using util::ByteReader;
using util::ByteWriter;

Bytes encode_hello(const HelloMsg& h) {
    ByteWriter w;
    w.u8(h.role);
    w.u16(h.version);
    return w.take();
}

HelloMsg decode_hello(const Bytes& payload) {
    ByteReader r(payload);
    HelloMsg h;
    h.role = r.u8();
    h.version = r.u16();
    r.expect_end();
    if (h.role > HelloMsg::kUser) throw TransportError("unknown hello role");
    return h;
}

Bytes encode_upload(const UploadMsg& m) {
    ByteWriter w;
    w.u32(m.requested_id);
    w.u32(m.n_features);
    w.u16(m.depth);
    w.u32(m.tree_count);
    Bytes pk = m.pk.serialize();
    w.u32(uint32_t(pk.size()));
    w.raw(pk);
    w.raw(lhe::serialize_ciphertext(m.pk, m.enc_seed[0]));
    w.raw(lhe::serialize_ciphertext(m.pk, m.enc_seed[1]));
    w.u32(uint32_t(m.model_bytes.size()));
    w.raw(m.model_bytes);
    return w.take();
}

UploadMsg decode_upload(const Bytes& payload) {
    ByteReader r(payload);
    UploadMsg m;
    m.requested_id = r.u32();
    m.n_features = r.u32();
    m.depth = r.u16();
    m.tree_count = r.u32();
    uint32_t pk_len = r.u32();
    m.pk = lhe::PublicKey::parse(r.raw(pk_len));
    m.enc_seed[0] = lhe::parse_ciphertext(m.pk, r);
    m.enc_seed[1] = lhe::parse_ciphertext(m.pk, r);
    uint32_t model_len = r.u32();
    m.model_bytes = r.raw(model_len);
    r.expect_end();
    return m;
}

namespace {

size_t node_count(uint16_t depth) { return (size_t(1) << depth) - 1; }

}  // namespace

Bytes encode_query_init(const lhe::PublicKey& pk, const QueryInitMsg& m) {
    ByteWriter w;
    w.u32(uint32_t(m.enc_input.size()));
    for (const auto& ct : m.enc_input) w.raw(lhe::serialize_ciphertext(pk, ct));
    for (const auto& provider : m.input_blocks)
        for (const auto& tree : provider)
            for (const auto& ct : tree) w.raw(lhe::serialize_ciphertext(pk, ct));
    return w.take();
}

QueryInitMsg decode_query_init(const Manifest& manifest, const Bytes& payload) {
    ByteReader r(payload);
    QueryInitMsg m;
    uint32_t n = r.u32();
    if (n != manifest.n_features) throw TransportError("input dimension mismatch");
    m.enc_input.resize(n);
    for (auto& ct : m.enc_input) ct = lhe::parse_ciphertext(manifest.pk, r);
    m.input_blocks.resize(manifest.providers.size());
    for (size_t k = 0; k < manifest.providers.size(); ++k) {
        const ManifestEntry& e = manifest.providers[k];
        m.input_blocks[k].resize(e.tree_count);
        for (auto& tree : m.input_blocks[k]) {
            tree.resize(node_count(e.depth));
            for (auto& ct : tree) ct = lhe::parse_ciphertext(manifest.pk, r);
        }
    }
    r.expect_end();
    return m;
}

Bytes encode_sc_batches(const lhe::PublicKey& pk,
                        const std::vector<std::vector<protocol::ScBatch>>& batches) {
    ByteWriter w;
    for (const auto& provider : batches)
        for (const auto& batch : provider)
            for (const auto& ct : batch.blinded) w.raw(lhe::serialize_ciphertext(pk, ct));
    return w.take();
}

std::vector<std::vector<protocol::ScBatch>> decode_sc_batches(const Manifest& manifest,
                                                              const Bytes& payload) {
    ByteReader r(payload);
    std::vector<std::vector<protocol::ScBatch>> out(manifest.providers.size());
    for (size_t k = 0; k < manifest.providers.size(); ++k) {
        const ManifestEntry& e = manifest.providers[k];
        out[k].resize(e.tree_count);
        for (auto& batch : out[k]) {
            batch.blinded.resize(node_count(e.depth));
            for (auto& ct : batch.blinded) ct = lhe::parse_ciphertext(manifest.pk, r);
        }
    }
    r.expect_end();
    return out;
}

size_t gamma_tilde_wire_bytes(uint16_t depth) { return (node_count(depth) + 7) / 8; }

Bytes encode_gamma_tildes(const std::vector<std::vector<protocol::GammaTilde>>& gts) {
    ByteWriter w;
    for (const auto& provider : gts) {
        for (const auto& gt : provider) {
            Bytes packed((gt.signs.size() + 7) / 8, 0);
            for (size_t i = 0; i < gt.signs.size(); ++i)
                if (gt.signs[i] > 0) packed[i / 8] |= uint8_t(1u << (i % 8));
            w.raw(packed);
        }
    }
    return w.take();
}

std::vector<std::vector<protocol::GammaTilde>> decode_gamma_tildes(const Manifest& manifest,
                                                                   const Bytes& payload) {
    ByteReader r(payload);
    std::vector<std::vector<protocol::GammaTilde>> out(manifest.providers.size());
    for (size_t k = 0; k < manifest.providers.size(); ++k) {
        const ManifestEntry& e = manifest.providers[k];
        out[k].resize(e.tree_count);
        for (auto& gt : out[k]) {
            size_t nodes = node_count(e.depth);
            Bytes packed = r.raw((nodes + 7) / 8);
            gt.signs.resize(nodes);
            for (size_t i = 0; i < nodes; ++i)
                gt.signs[i] = (packed[i / 8] >> (i % 8)) & 1 ? int8_t(1) : int8_t(-1);
        }
    }
    r.expect_end();
    return out;
}

namespace {

void encode_base_points(ByteWriter& w, const std::vector<Bytes>& points) {
    if (points.empty()) throw TransportError("empty base-OT batch");
    w.u16(uint16_t(points[0].size()));
    for (const Bytes& p : points) {
        if (p.size() != points[0].size()) throw TransportError("point size mismatch");
        w.raw(p);
    }
}

}  // namespace

Bytes encode_ot_r1(const OtR1Msg& m) {
    ByteWriter w;
    w.u32(m.provider_id);
    w.u32(m.tree_index);
    w.u16(uint16_t(m.request.base.size()));
    std::vector<Bytes> pts;
    pts.reserve(m.request.base.size());
    for (const auto& b : m.request.base) pts.push_back(b.point_b);
    encode_base_points(w, pts);
    return w.take();
}

OtR1Msg decode_ot_r1(const Bytes& payload) {
    ByteReader r(payload);
    OtR1Msg m;
    m.provider_id = r.u32();
    m.tree_index = r.u32();
    uint16_t d = r.u16();
    if (d == 0 || d > 20) throw TransportError("transfer depth out of range");
    uint16_t point_len = r.u16();
    m.request.base.resize(d);
    for (auto& b : m.request.base) b.point_b = r.raw(point_len);
    r.expect_end();
    return m;
}

Bytes encode_ot_r2(const OtR2Msg& m) {
    ByteWriter w;
    w.u32(m.provider_id);
    w.u32(m.tree_index);
    w.u16(uint16_t(m.reply.base.size()));
    std::vector<Bytes> pts;
    pts.reserve(m.reply.base.size());
    for (const auto& b : m.reply.base) pts.push_back(b.point_a);
    encode_base_points(w, pts);
    for (const auto& b : m.reply.base) {
        w.raw(b.enc_key0.data(), b.enc_key0.size());
        w.raw(b.enc_key1.data(), b.enc_key1.size());
    }
    if (m.reply.ciphertexts.empty()) throw TransportError("empty transfer payload");
    w.u32(uint32_t(m.reply.ciphertexts.size()));
    w.u32(uint32_t(m.reply.ciphertexts[0].size()));
    for (const Bytes& c : m.reply.ciphertexts) {
        if (c.size() != m.reply.ciphertexts[0].size())
            throw TransportError("transfer payload size mismatch");
        w.raw(c);
    }
    return w.take();
}

OtR2Msg decode_ot_r2(const Bytes& payload) {
    ByteReader r(payload);
    OtR2Msg m;
    m.provider_id = r.u32();
    m.tree_index = r.u32();
    uint16_t d = r.u16();
    if (d == 0 || d > 20) throw TransportError("transfer depth out of range");
    uint16_t point_len = r.u16();
    m.reply.base.resize(d);
    for (auto& b : m.reply.base) b.point_a = r.raw(point_len);
    for (auto& b : m.reply.base) {
        Bytes k0 = r.raw(16), k1 = r.raw(16);
        std::copy(k0.begin(), k0.end(), b.enc_key0.begin());
        std::copy(k1.begin(), k1.end(), b.enc_key1.begin());
    }
    uint32_t count = r.u32();
    uint32_t len = r.u32();
    if (count != (uint32_t(1) << d)) throw TransportError("transfer payload count mismatch");
    m.reply.ciphertexts.resize(count);
    for (auto& c : m.reply.ciphertexts) c = r.raw(len);
    r.expect_end();
    return m;
}

Bytes encode_final_share(const lhe::PublicKey& pk, const mpz_class& r_total) {
    ByteWriter w;
    w.mpz_fixed(r_total, pk.element_bytes());
    return w.take();
}

mpz_class decode_final_share(const lhe::PublicKey& pk, const Bytes& payload) {
    ByteReader r(payload);
    mpz_class v = r.mpz(pk.element_bytes());
    r.expect_end();
    return v;
}

}  // namespace forestveil::transport
