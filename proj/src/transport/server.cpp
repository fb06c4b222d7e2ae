// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/server.hpp"

#include "forestveil/transport/wire.hpp"
#include "forestveil/util/parallel.hpp"
#include "forestveil/util/serial.hpp"

namespace forestveil::transport {

ForestServer::ForestServer(ServerConfig cfg) : cfg_(std::move(cfg)), store_(cfg_.store_dir) {}

ForestServer::~ForestServer() { stop(); }

void ForestServer::bind() {
    store_.load();
    listener_.bind(cfg_.listen_addr);
}

void ForestServer::run() {
    for (;;) {
        TcpStream stream = listener_.accept();
        if (!stream.valid()) break;  // listener shut down
        std::lock_guard lk(workers_mu_);
        workers_.emplace_back([this, s = std::move(stream)]() mutable { serve(std::move(s)); });
    }
}

void ForestServer::start() {
    accept_thread_ = std::thread([this] { run(); });
}

void ForestServer::stop() {
    if (stopping_.exchange(true)) return;
    listener_.shutdown();
    if (accept_thread_.joinable()) accept_thread_.join();
    std::lock_guard lk(workers_mu_);
    for (auto& w : workers_)
        if (w.joinable()) w.join();
    workers_.clear();
}

void ForestServer::serve(TcpStream stream) {
    stream.set_receive_timeout(cfg_.receive_timeout_s);
    FrameStream fs(stream);
    try {
        Frame hello = fs.expect(MsgType::kHello);
        HelloMsg h = decode_hello(hello.payload);
        if (h.role == HelloMsg::kProvider) {
            fs.send(MsgType::kHello, encode_hello({HelloMsg::kServer, 1}));
            handle_provider(fs);
        } else if (h.role == HelloMsg::kUser) {
            handle_user(fs);
        } else {
            fs.send_error(2, "unknown role");
        }
    } catch (const RemoteError&) {
        // peer already reported; nothing to send back
    } catch (const std::exception& e) {
        try {
            fs.send_error(1, e.what());
        } catch (...) {
        }
    }
}

void ForestServer::handle_provider(FrameStream& fs) {
    Frame f = fs.expect(MsgType::kUploadModel);
    UploadMsg up = decode_upload(f.payload);
    uint32_t id = up.requested_id;
    id = store_.add_model(up.pk, up.n_features, up.depth, up.requested_id, up.enc_seed,
                          up.model_bytes);
    util::ByteWriter w;
    w.u32(id);
    fs.send(MsgType::kUploadModel, w.take());
}

void ForestServer::handle_user(FrameStream& fs) {
    std::shared_lock lock(store_.mutex());
    if (!store_.has_key() || store_.size() == 0) {
        fs.send_error(3, "no models");
        return;
    }
    const Manifest& manifest = store_.manifest();
    const lhe::PublicKey& pk = manifest.pk;
    fs.send(MsgType::kManifest, serialize_manifest(manifest));

    Frame f = fs.expect(MsgType::kQueryInit);
    QueryInitMsg init = decode_query_init(manifest, f.payload);

    util::Rng rng;  // fresh per-query randomness
    lhe::HomDotContext input_ctx(pk, init.enc_input);
    std::vector<const protocol::EncryptedModel*> models = store_.models();

    struct TreeWork {
        size_t provider_pos;
        size_t tree_pos;
        const protocol::EncryptedTree* tree;
        uint64_t seed;
        std::unique_ptr<protocol::PteServerTree> session;
        protocol::ScBatch batch;
        protocol::GammaTilde gt;
    };
    std::vector<TreeWork> work;
    for (size_t k = 0; k < models.size(); ++k)
        for (size_t j = 0; j < models[k]->trees.size(); ++j)
            work.push_back({k, j, &models[k]->trees[j], rng.u64(), nullptr, {}, {}});

    // Steps 1-4 for every tree; evaluations are independent.
    util::parallel_for(work.size(), [&](size_t i) {
        TreeWork& tw = work[i];
        util::Rng tree_rng(tw.seed);
        tw.session = std::make_unique<protocol::PteServerTree>(pk, *tw.tree, input_ctx);
        tw.session->node_values(init.input_blocks[tw.provider_pos][tw.tree_pos]);
        tw.session->randomize(tree_rng);
        tw.batch = tw.session->comparison_round(tree_rng);
        tw.gt = tw.session->gamma_tilde();
    });

    std::vector<std::vector<protocol::ScBatch>> batches(models.size());
    std::vector<std::vector<protocol::GammaTilde>> gts(models.size());
    for (size_t k = 0; k < models.size(); ++k) {
        batches[k].resize(models[k]->trees.size());
        gts[k].resize(models[k]->trees.size());
    }
    for (TreeWork& tw : work) {
        batches[tw.provider_pos][tw.tree_pos] = std::move(tw.batch);
        gts[tw.provider_pos][tw.tree_pos] = std::move(tw.gt);
    }
    fs.send(MsgType::kScBatch, encode_sc_batches(pk, batches));
    fs.send(MsgType::kGammaTilde, encode_gamma_tildes(gts));

    // Step 5: one transfer per tree, in manifest order.
    const mpz_class& M = pk.group().modulus;
    mpz_class r_total = 0;
    for (TreeWork& tw : work) {
        Frame r1 = fs.expect(MsgType::kOtR1);
        OtR1Msg req = decode_ot_r1(r1.payload);
        const ManifestEntry& entry = manifest.providers[tw.provider_pos];
        if (req.provider_id != entry.provider_id || req.tree_index != tw.tree->tree_index)
            throw TransportError("transfer out of order");
        OtR2Msg reply;
        reply.provider_id = req.provider_id;
        reply.tree_index = req.tree_index;
        util::Rng ot_rng(rng.u64());
        reply.reply = tw.session->ot_respond(req.request, ot_rng);
        fs.send(MsgType::kOtR2, encode_ot_r2(reply));
        r_total = (r_total + tw.session->share()) % M;
    }

    fs.send(MsgType::kFinalShare, encode_final_share(pk, r_total));
}

}  // namespace forestveil::transport
