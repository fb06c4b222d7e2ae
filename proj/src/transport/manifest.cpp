// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/manifest.hpp"

#include <cstring>

#include "forestveil/transport/frame.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::transport {

namespace {
constexpr char kMagic[4] = {'F', 'V', 'M', 'F'};
constexpr uint8_t kVersion = 1;
}  // namespace

const ManifestEntry* Manifest::find(uint32_t provider_id) const {
    for (const auto& e : providers)
        if (e.provider_id == provider_id) return &e;
    return nullptr;
}

Bytes serialize_manifest(const Manifest& m) {
    util::ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kMagic), 4);
    w.u8(kVersion);
    Bytes pk = m.pk.serialize();
    w.u32(uint32_t(pk.size()));
    w.raw(pk);
    w.u32(m.n_features);
    w.u32(uint32_t(m.providers.size()));
    for (const auto& e : m.providers) {
        w.u32(e.provider_id);
        w.u32(e.tree_count);
        w.u16(e.depth);
        w.raw(lhe::serialize_ciphertext(m.pk, e.enc_seed[0]));
        w.raw(lhe::serialize_ciphertext(m.pk, e.enc_seed[1]));
    }
    return w.take();
}

Manifest parse_manifest(const Bytes& data) {
    util::ByteReader r(data);
    Bytes magic = r.raw(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) throw TransportError("not a manifest");
    if (r.u8() != kVersion) throw TransportError("unsupported manifest version");
    Manifest m;
    uint32_t pk_len = r.u32();
    m.pk = lhe::PublicKey::parse(r.raw(pk_len));
    m.n_features = r.u32();
    uint32_t count = r.u32();
    m.providers.resize(count);
    for (auto& e : m.providers) {
        e.provider_id = r.u32();
        e.tree_count = r.u32();
        e.depth = r.u16();
        e.enc_seed[0] = lhe::parse_ciphertext(m.pk, r);
        e.enc_seed[1] = lhe::parse_ciphertext(m.pk, r);
    }
    r.expect_end();
    return m;
}

}  // namespace forestveil::transport
