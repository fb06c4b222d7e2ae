// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>

#include "forestveil/bench/audit.hpp"
#include "forestveil/bench/synthetic.hpp"
#include "forestveil/transport/client.hpp"
#include "forestveil/transport/server.hpp"
#include "forestveil/transport/socket.hpp"
#include "support.hpp"

using namespace forestveil;
using test::shared_keys;
namespace fs = std::filesystem;

namespace {

// In-memory byte pipe for codec tests.
class PipeStream : public transport::ByteStream {
  public:
    void read_exact(uint8_t* buf, size_t len) override {
        if (buf_.size() - pos_ < len) throw transport::TransportError("pipe underrun");
        std::copy(buf_.begin() + long(pos_), buf_.begin() + long(pos_ + len), buf);
        pos_ += len;
    }
    void write_all(const uint8_t* buf, size_t len) override {
        buf_.insert(buf_.end(), buf, buf + len);
    }

  private:
    Bytes buf_;
    size_t pos_ = 0;
};

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("forestveil-test-" + tag + "-" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

protocol::EncryptedModel make_model(uint32_t trees, int depth, size_t n, util::Rng& rng,
                                    forest::RandomForest* plain_out = nullptr,
                                    uint32_t provider_id = 0) {
    forest::RandomForest rf = bench::random_forest(trees, depth, n, rng);
    crypto::PrfSeed seed = crypto::PrfSeed::random(rng);
    protocol::EncryptedModel model =
        protocol::encrypt_model(rf, shared_keys().pk, seed, provider_id, rng);
    if (plain_out) *plain_out = std::move(rf);
    return model;
}

}  // namespace

TEST_CASE("frame round trip over a pipe") {
    PipeStream pipe;
    transport::FrameStream fs(pipe);
    util::Rng rng(1);
    for (auto type : {transport::MsgType::kHello, transport::MsgType::kQueryInit,
                      transport::MsgType::kOtR2, transport::MsgType::kFinalShare}) {
        Bytes payload = rng.bytes(rng.uniform(0, 2000));
        fs.send(type, payload);
        transport::Frame f = fs.receive();
        CHECK(f.type == type);
        CHECK(f.payload == payload);
    }
    CHECK(fs.bytes_sent() == fs.bytes_received());
}

TEST_CASE("frame codec rejects malformed input") {
    PipeStream pipe;
    // length zero is invalid (must cover the type byte)
    uint8_t bad[5] = {0, 0, 0, 0, 0x01};
    pipe.write_all(bad, sizeof(bad));
    transport::FrameStream fs(pipe);
    CHECK_THROWS_AS(fs.receive(), transport::TransportError);

    PipeStream pipe2;
    uint8_t unknown[5] = {0, 0, 0, 1, 0x55};
    pipe2.write_all(unknown, sizeof(unknown));
    transport::FrameStream fs2(pipe2);
    CHECK_THROWS_AS(fs2.receive(), transport::TransportError);

    transport::Frame oversize{transport::MsgType::kHello, Bytes(transport::kMaxFramePayload + 1)};
    CHECK_THROWS_AS(transport::encode_frame(oversize), transport::TransportError);
}

TEST_CASE("error frames decode into remote errors") {
    PipeStream pipe;
    transport::FrameStream fs(pipe);
    fs.send_error(3, "no models");
    try {
        fs.expect(transport::MsgType::kManifest);
        FAIL("expected a remote error");
    } catch (const transport::RemoteError& e) {
        CHECK(e.code() == 3);
        CHECK(std::string(e.what()) == "no models");
    }
}

TEST_CASE("manifest serialization round trip") {
    util::Rng rng(2);
    transport::Manifest m;
    m.pk = shared_keys().pk;
    m.n_features = 9;
    for (uint32_t k = 1; k <= 2; ++k) {
        transport::ManifestEntry e;
        e.provider_id = k;
        e.tree_count = 3 * k;
        e.depth = uint16_t(k + 1);
        e.enc_seed = {lhe::encrypt(m.pk, 1, rng), lhe::encrypt(m.pk, 2, rng)};
        m.providers.push_back(e);
    }
    Bytes data = transport::serialize_manifest(m);
    transport::Manifest back = transport::parse_manifest(data);
    CHECK(transport::serialize_manifest(back) == data);
    CHECK(back.total_trees() == 9);
    CHECK(back.find(2)->depth == 3);
    CHECK(back.find(5) == nullptr);
}

TEST_CASE("store persists models byte-identically") {
    TempDir dir("store");
    util::Rng rng(3);
    protocol::EncryptedModel model = make_model(2, 2, 4, rng);
    Bytes blob = protocol::serialize_model(shared_keys().pk, model);
    {
        transport::ModelStore store(dir.path.string());
        uint32_t id =
            store.add_model(shared_keys().pk, 4, 2, 0, model.enc_seed, blob);
        CHECK(id == 1);
    }
    // restart: reload from disk
    transport::ModelStore store(dir.path.string());
    store.load();
    CHECK(store.size() == 1);
    CHECK(transport::read_file(store.model_path(1)) == blob);

    // duplicate id and inconsistent dimension are rejected
    CHECK_THROWS_AS(store.add_model(shared_keys().pk, 4, 2, 1, model.enc_seed, blob),
                    transport::TransportError);
    protocol::EncryptedModel other = make_model(1, 2, 5, rng);
    Bytes other_blob = protocol::serialize_model(shared_keys().pk, other);
    CHECK_THROWS_AS(store.add_model(shared_keys().pk, 5, 2, 0, other.enc_seed, other_blob),
                    transport::TransportError);
}

TEST_CASE("stored model size tracks the closed-form formula") {
    TempDir dir("size");
    util::Rng rng(4);
    uint32_t m = 6;
    int d = 5;
    size_t n = 10;
    protocol::EncryptedModel model = make_model(m, d, n, rng);
    Bytes blob = protocol::serialize_model(shared_keys().pk, model);
    transport::ModelStore store(dir.path.string());
    store.add_model(shared_keys().pk, uint32_t(n), uint16_t(d), 0, model.enc_seed, blob);

    double formula = double(m) * (1 << d) * double(n) * (4 + shared_keys().pk.element_bytes()) +
                     double(m) * (2 << d) * (4 + shared_keys().pk.ciphertext_bytes());
    double actual = double(fs::file_size(store.model_path(1)));
    CHECK(actual >= formula);
    CHECK(actual <= formula * 1.05);
}

TEST_CASE("loopback session matches the plaintext oracle") {
    TempDir dir("loopback");
    util::Rng rng(5);

    transport::ForestServer server({dir.path.string(), "127.0.0.1:0"});
    server.bind();
    server.start();

    SUBCASE("query with no models yields an error frame") {
        try {
            transport::fetch_manifest("127.0.0.1", server.port());
            FAIL("expected a remote error");
        } catch (const transport::RemoteError& e) {
            CHECK(std::string(e.what()) == "no models");
        }
    }

    SUBCASE("upload then query") {
        forest::RandomForest plain;
        protocol::EncryptedModel model = make_model(4, 3, 8, rng, &plain);
        uint32_t id = transport::upload_model("127.0.0.1", server.port(), shared_keys().pk, model);
        CHECK(id == 1);

        // the store directory holds only public material
        for (const auto& entry : fs::directory_iterator(dir.path))
            CHECK(entry.path().extension() != ".sk");

        auto x = bench::random_input(8, rng);
        transport::QueryStats stats;
        protocol::OnlineResult res =
            transport::query_predict("127.0.0.1", server.port(), shared_keys().sk, x, &stats);
        CHECK(res.sum_scaled == plain.predict_scaled_sum(x));

        // the query schedule: exactly these frame types in each direction
        std::vector<std::string> sent, received;
        for (auto& [k, v] : stats.payload_sent) sent.push_back(k);
        for (auto& [k, v] : stats.payload_received) received.push_back(k);
        CHECK(sent == std::vector<std::string>{"HELLO", "OT_R1", "QUERY_INIT"});
        CHECK(received == std::vector<std::string>{"FINAL_SHARE", "GAMMA_TILDE", "MANIFEST",
                                                   "OT_R2", "SC_BATCH"});

        // transcript byte audit against the closed forms
        bench::QueryShape shape{8, {{4, 3}}};
        auto want_sent = bench::expected_user_sent_payload(shared_keys().pk, shape);
        auto want_recv = bench::expected_user_received_payload(shared_keys().pk, shape);
        for (auto& [name, bytes] : want_sent) {
            INFO("sent ", name);
            CHECK(stats.payload_sent[name] == bytes);
        }
        for (auto& [name, bytes] : want_recv) {
            INFO("received ", name);
            CHECK(stats.payload_received[name] == bytes);
        }
    }

    SUBCASE("second provider with a different dimension is rejected") {
        protocol::EncryptedModel model = make_model(2, 2, 8, rng);
        transport::upload_model("127.0.0.1", server.port(), shared_keys().pk, model);
        protocol::EncryptedModel bad = make_model(1, 2, 9, rng);
        CHECK_THROWS_AS(
            transport::upload_model("127.0.0.1", server.port(), shared_keys().pk, bad),
            transport::RemoteError);
    }

    server.stop();
}

TEST_CASE("multi-provider session over a restarted server") {
    TempDir dir("restart");
    util::Rng rng(6);
    std::vector<forest::RandomForest> plains(2);

    {
        transport::ForestServer server({dir.path.string(), "127.0.0.1:0"});
        server.bind();
        server.start();
        for (uint32_t k = 0; k < 2; ++k) {
            protocol::EncryptedModel model = make_model(2 + k, 2, 5, rng, &plains[k]);
            transport::upload_model("127.0.0.1", server.port(), shared_keys().pk, model);
        }
        server.stop();
    }

    // a fresh server process answers from the persisted store
    transport::ForestServer server({dir.path.string(), "127.0.0.1:0"});
    server.bind();
    server.start();
    auto x = bench::random_input(5, rng);
    protocol::OnlineResult res =
        transport::query_predict("127.0.0.1", server.port(), shared_keys().sk, x);
    int64_t oracle = plains[0].predict_scaled_sum(x) + plains[1].predict_scaled_sum(x);
    CHECK(res.sum_scaled == oracle);
    CHECK(res.total_trees == 5);
    server.stop();
}
