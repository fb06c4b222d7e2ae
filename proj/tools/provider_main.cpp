// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
//
// Provider role: trains a random forest on a local CSV dataset, encrypts it
// under the system public key and uploads it to the server. After the upload
// the provider can go off-line.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>

#include "forestveil/forest/train.hpp"
#include "forestveil/protocol/encrypted_model.hpp"
#include "forestveil/transport/client.hpp"
#include "forestveil/transport/socket.hpp"
#include "forestveil/transport/store.hpp"

using namespace forestveil;

int main(int argc, char** argv) {
    CLI::App app{"forestveil provider: train, encrypt and upload a forest"};
    std::string train_csv, pk_path, server_addr, save_forest_path;
    uint32_t trees = 50;
    int depth = 8;
    uint32_t provider_id = 0;
    uint64_t seed = 0;
    double feature_fraction = 0.1;
    app.add_option("--train", train_csv, "training dataset (CSV, last column = label)")
        ->required();
    app.add_option("--trees", trees, "number of trees")->capture_default_str();
    app.add_option("--depth", depth, "maximum tree depth")->capture_default_str();
    app.add_option("--pk", pk_path, "public key file")->required();
    app.add_option("--server", server_addr, "server address host:port")->required();
    app.add_option("--id", provider_id, "requested provider id (0 = server assigns)");
    app.add_option("--seed", seed, "training seed (0 = random)");
    app.add_option("--feature-fraction", feature_fraction, "features considered per split")
        ->capture_default_str();
    app.add_option("--save-forest", save_forest_path, "also save the plaintext forest to a file");
    CLI11_PARSE(app, argc, argv);

    try {
        util::Rng rng;
        if (seed == 0) seed = rng.u64();
        lhe::PublicKey pk = lhe::PublicKey::parse(transport::read_file(pk_path));
        forest::Dataset data = forest::load_csv(train_csv);

        auto t0 = std::chrono::steady_clock::now();
        forest::TrainParams tp;
        tp.n_trees = trees;
        tp.max_depth = depth;
        tp.feature_fraction = feature_fraction;
        tp.rng_seed = seed;
        forest::RandomForest rf = forest::train_forest(data, tp);
        auto t1 = std::chrono::steady_clock::now();
        if (!save_forest_path.empty()) forest::save_forest(rf, save_forest_path);

        crypto::PrfSeed prf_seed = crypto::PrfSeed::random(rng);
        protocol::EncryptedModel model =
            protocol::encrypt_model(rf, pk, prf_seed, provider_id, rng);
        auto t2 = std::chrono::steady_clock::now();

        auto [host, port] = transport::parse_addr(server_addr);
        uint32_t id = transport::upload_model(host, port, pk, model, provider_id);
        auto t3 = std::chrono::steady_clock::now();

        using secs = std::chrono::duration<double>;
        std::printf("trained %u trees (depth %d, n=%ld) in %.2fs\n", trees, depth,
                    long(data.cols()), secs(t1 - t0).count());
        std::printf("model encryption: %.2fs, upload: %.2fs, provider id %u\n",
                    secs(t2 - t1).count(), secs(t3 - t2).count(), id);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "provider: %s\n", e.what());
        return 1;
    }
    return 0;
}
