// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/client.hpp"

#include <chrono>

#include "forestveil/transport/socket.hpp"
#include "forestveil/util/parallel.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::transport {

namespace {

double seconds_since(std::chrono::steady_clock::time_point& mark) {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - mark).count();
    mark = now;
    return s;
}

void record_frame_bytes(const FrameStream& fs, QueryStats* stats) {
    if (!stats) return;
    stats->bytes_sent = fs.bytes_sent();
    stats->bytes_received = fs.bytes_received();
    for (MsgType t : {MsgType::kHello, MsgType::kManifest, MsgType::kQueryInit, MsgType::kScBatch,
                      MsgType::kGammaTilde, MsgType::kOtR1, MsgType::kOtR2, MsgType::kFinalShare}) {
        if (uint64_t b = fs.payload_sent_of(t)) stats->payload_sent[msg_type_name(t)] = b;
        if (uint64_t b = fs.payload_received_of(t)) stats->payload_received[msg_type_name(t)] = b;
    }
}

}  // namespace

uint32_t upload_model(const std::string& host, uint16_t port, const lhe::PublicKey& pk,
                      const protocol::EncryptedModel& model, uint32_t requested_id) {
    TcpStream stream = TcpStream::connect(host, port);
    FrameStream fs(stream);
    fs.send(MsgType::kHello, encode_hello({HelloMsg::kProvider, 1}));
    fs.expect(MsgType::kHello);

    UploadMsg up;
    up.requested_id = requested_id;
    up.n_features = model.n_features;
    up.depth = model.depth;
    up.tree_count = model.tree_count();
    up.pk = pk;
    up.enc_seed = model.enc_seed;
    up.model_bytes = protocol::serialize_model(pk, model);
    fs.send(MsgType::kUploadModel, encode_upload(up));

    Frame ack = fs.expect(MsgType::kUploadModel);
    util::ByteReader r(ack.payload);
    uint32_t id = r.u32();
    r.expect_end();
    return id;
}

Manifest fetch_manifest(const std::string& host, uint16_t port) {
    TcpStream stream = TcpStream::connect(host, port);
    FrameStream fs(stream);
    fs.send(MsgType::kHello, encode_hello({HelloMsg::kUser, 1}));
    return parse_manifest(fs.expect(MsgType::kManifest).payload);
}

protocol::OnlineResult query_predict(const std::string& host, uint16_t port,
                                     const lhe::SecretKey& sk,
                                     const std::vector<forest::Milli>& x, QueryStats* stats) {
    auto mark = std::chrono::steady_clock::now();
    TcpStream stream = TcpStream::connect(host, port);
    FrameStream fs(stream);
    fs.send(MsgType::kHello, encode_hello({HelloMsg::kUser, 1}));
    Manifest manifest = parse_manifest(fs.expect(MsgType::kManifest).payload);
    if (stats) stats->manifest_seconds = seconds_since(mark);

    const lhe::PublicKey& pk = sk.public_key();
    if (!(manifest.pk == pk)) throw TransportError("server key does not match the user's key");
    if (manifest.n_features != x.size()) throw TransportError("input dimension mismatch");

    util::Rng rng;

    // R1: seeds, encrypted input and the b' blocks of every tree.
    struct TreeState {
        uint32_t provider_id;
        uint32_t tree_index;
        std::unique_ptr<protocol::PteUserTree> session;
        uint64_t seed;
    };
    std::vector<TreeState> trees;
    std::vector<crypto::PrfSeed> seeds(manifest.providers.size());
    for (size_t k = 0; k < manifest.providers.size(); ++k) {
        const ManifestEntry& e = manifest.providers[k];
        seeds[k] = protocol::decrypt_seed(sk, e.enc_seed);
        for (uint32_t j = 1; j <= e.tree_count; ++j)
            trees.push_back({e.provider_id, j, nullptr, rng.u64()});
    }

    QueryInitMsg init;
    init.enc_input.reserve(x.size());
    for (forest::Milli v : x) init.enc_input.push_back(lhe::encrypt_with_sk(sk, mpz_class(v), rng));
    init.input_blocks.resize(manifest.providers.size());
    {
        std::vector<std::vector<lhe::Ciphertext>> blocks(trees.size());
        std::vector<size_t> provider_of(trees.size());
        for (size_t k = 0, t = 0; k < manifest.providers.size(); ++k)
            for (uint32_t j = 0; j < manifest.providers[k].tree_count; ++j, ++t) provider_of[t] = k;
        util::parallel_for(trees.size(), [&](size_t t) {
            size_t k = provider_of[t];
            trees[t].session = std::make_unique<protocol::PteUserTree>(
                sk, seeds[k], trees[t].tree_index, manifest.providers[k].depth, x);
            util::Rng tree_rng(trees[t].seed);
            blocks[t] = trees[t].session->input_blocks(tree_rng);
        });
        for (size_t k = 0, t = 0; k < manifest.providers.size(); ++k) {
            init.input_blocks[k].resize(manifest.providers[k].tree_count);
            for (uint32_t j = 0; j < manifest.providers[k].tree_count; ++j, ++t)
                init.input_blocks[k][j] = std::move(blocks[t]);
        }
    }
    fs.send(MsgType::kQueryInit, encode_query_init(pk, init));
    if (stats) stats->input_seconds = seconds_since(mark);

    // R2: comparison ciphertexts and gamma-tilde; path computation per tree.
    auto batches = decode_sc_batches(manifest, fs.expect(MsgType::kScBatch).payload);
    auto gts = decode_gamma_tildes(manifest, fs.expect(MsgType::kGammaTilde).payload);
    {
        std::vector<std::pair<size_t, size_t>> pos(trees.size());
        for (size_t k = 0, t = 0; k < manifest.providers.size(); ++k)
            for (uint32_t j = 0; j < manifest.providers[k].tree_count; ++j, ++t) pos[t] = {k, j};
        util::parallel_for(trees.size(), [&](size_t t) {
            trees[t].session->compute_path(batches[pos[t].first][pos[t].second],
                                           gts[pos[t].first][pos[t].second]);
        });
    }
    if (stats) stats->path_seconds = seconds_since(mark);

    // R3: one request/reply transfer per tree, batched in manifest order.
    const mpz_class& M = pk.group().modulus;
    mpz_class s_total = 0;
    for (size_t t = 0; t < trees.size(); ++t) {
        util::Rng ot_rng(rng.u64());
        OtR1Msg r1{trees[t].provider_id, trees[t].tree_index,
                   trees[t].session->ot_request(ot_rng)};
        fs.send(MsgType::kOtR1, encode_ot_r1(r1));
        OtR2Msg r2 = decode_ot_r2(fs.expect(MsgType::kOtR2).payload);
        if (r2.provider_id != trees[t].provider_id || r2.tree_index != trees[t].tree_index)
            throw TransportError("transfer reply out of order");
        s_total = (s_total + trees[t].session->receive_share(r2.reply)) % M;
    }
    if (stats) stats->transfer_seconds = seconds_since(mark);

    // R4: the aggregated server share.
    mpz_class r_total = decode_final_share(pk, fs.expect(MsgType::kFinalShare).payload);

    protocol::OnlineResult out;
    out.total_trees = uint32_t(trees.size());
    mpz_class sum = pk.group().decode_signed((r_total + s_total) % M);
    if (!sum.fits_slong_p()) throw protocol::ProtocolAbort("reconstructed sum out of range");
    out.sum_scaled = int64_t(sum.get_si());
    if (out.sum_scaled < 0 || out.sum_scaled > 1000 * int64_t(trees.size()))
        throw protocol::ProtocolAbort("reconstructed sum out of range");
    out.y = double(out.sum_scaled) / (1000.0 * double(trees.size()));
    out.y_display = protocol::format_prediction(out.sum_scaled, out.total_trees);
    if (stats) {
        stats->final_seconds = seconds_since(mark);
        record_frame_bytes(fs, stats);
    }
    return out;
}

}  // namespace forestveil::transport
