// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "forestveil/crypto/ot.hpp"
#include "forestveil/protocol/tree_eval.hpp"
#include "forestveil/transport/manifest.hpp"

namespace forestveil::transport {

// Payload codecs for the query frames. Counts are implied by the manifest,
// so the payloads carry no per-item framing beyond fixed-width values.

struct HelloMsg {
    enum Role : uint8_t { kServer = 0, kProvider = 1, kUser = 2 };
    uint8_t role = kServer;
    uint16_t version = 1;
};
Bytes encode_hello(const HelloMsg& h);
HelloMsg decode_hello(const Bytes& payload);

struct UploadMsg {
    uint32_t requested_id = 0;
    uint32_t n_features = 0;
    uint16_t depth = 0;
    uint32_t tree_count = 0;
    lhe::PublicKey pk;
    std::array<lhe::Ciphertext, 2> enc_seed;
    Bytes model_bytes;
};
Bytes encode_upload(const UploadMsg& m);
UploadMsg decode_upload(const Bytes& payload);

// QUERY_INIT: the encrypted input followed by the b' blocks of every tree of
// every provider, in manifest order.
struct QueryInitMsg {
    std::vector<lhe::Ciphertext> enc_input;
    // [provider][tree][node]
    std::vector<std::vector<std::vector<lhe::Ciphertext>>> input_blocks;
};
Bytes encode_query_init(const lhe::PublicKey& pk, const QueryInitMsg& m);
QueryInitMsg decode_query_init(const Manifest& manifest, const Bytes& payload);

// SC_BATCH: comparison ciphertexts for every tree, manifest order.
Bytes encode_sc_batches(const lhe::PublicKey& pk,
                        const std::vector<std::vector<protocol::ScBatch>>& batches);
std::vector<std::vector<protocol::ScBatch>> decode_sc_batches(const Manifest& manifest,
                                                              const Bytes& payload);

// GAMMA_TILDE: per tree, one bit per node (+1 = 1), padded to a byte
// boundary; trees in manifest order.
Bytes encode_gamma_tildes(const std::vector<std::vector<protocol::GammaTilde>>& gts);
std::vector<std::vector<protocol::GammaTilde>> decode_gamma_tildes(const Manifest& manifest,
                                                                   const Bytes& payload);
size_t gamma_tilde_wire_bytes(uint16_t depth);

struct OtR1Msg {
    uint32_t provider_id = 0;
    uint32_t tree_index = 0;  // 1-based within the provider
    crypto::OtReceiverMsg request;
};
Bytes encode_ot_r1(const OtR1Msg& m);
OtR1Msg decode_ot_r1(const Bytes& payload);

struct OtR2Msg {
    uint32_t provider_id = 0;
    uint32_t tree_index = 0;
    crypto::OtSenderMsg reply;
};
Bytes encode_ot_r2(const OtR2Msg& m);
OtR2Msg decode_ot_r2(const Bytes& payload);

Bytes encode_final_share(const lhe::PublicKey& pk, const mpz_class& r_total);
mpz_class decode_final_share(const lhe::PublicKey& pk, const Bytes& payload);

}  // namespace forestveil::transport
