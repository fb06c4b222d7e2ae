// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
//
// User role: submits a private feature vector and receives the merged-forest
// prediction. Requires the secret key obtained from the key authority.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>

#include "forestveil/forest/dataset.hpp"
#include "forestveil/transport/client.hpp"
#include "forestveil/transport/socket.hpp"
#include "forestveil/transport/store.hpp"

using namespace forestveil;

int main(int argc, char** argv) {
    CLI::App app{"forestveil user: query a prediction for a private input"};
    std::string input_csv, sk_path, server_addr;
    bool json_output = false;
    app.add_option("--input", input_csv, "feature row (CSV, one line of n values)")->required();
    app.add_option("--sk", sk_path, "secret key file")->required();
    app.add_option("--server", server_addr, "server address host:port")->required();
    app.add_flag("--json", json_output, "emit JSON with timing and byte counts");
    CLI11_PARSE(app, argc, argv);

    try {
        lhe::SecretKey sk = lhe::SecretKey::parse(transport::read_file(sk_path));
        std::vector<double> row = forest::load_feature_row(input_csv);
        std::vector<forest::Milli> x = forest::to_milli(row);
        auto [host, port] = transport::parse_addr(server_addr);

        transport::QueryStats stats;
        protocol::OnlineResult res = transport::query_predict(host, port, sk, x, &stats);

        if (json_output) {
            nlohmann::json j;
            j["y"] = res.y_display;
            j["trees"] = res.total_trees;
            j["timing_seconds"] = {{"manifest", stats.manifest_seconds},
                                   {"input_submission", stats.input_seconds},
                                   {"path_computation", stats.path_seconds},
                                   {"label_transfer", stats.transfer_seconds},
                                   {"prediction", stats.final_seconds}};
            j["bytes"] = {{"sent", stats.bytes_sent}, {"received", stats.bytes_received}};
            j["payload_bytes_sent"] = stats.payload_sent;
            j["payload_bytes_received"] = stats.payload_received;
            std::cout << j.dump(2) << std::endl;
        } else {
            std::printf("%s\n", res.y_display.c_str());
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "user: %s\n", e.what());
        return 1;
    }
    return 0;
}
