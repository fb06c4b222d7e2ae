// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
//
// Untrusted server role: stores encrypted models and answers prediction
// queries. Holds no secret-key material.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>

#include "forestveil/transport/server.hpp"

using namespace forestveil;

int main(int argc, char** argv) {
    CLI::App app{"forestveil server: store encrypted models, answer queries"};
    transport::ServerConfig cfg;
    cfg.listen_addr = "0.0.0.0:7713";
    app.add_option("--store", cfg.store_dir, "model store directory")->required();
    app.add_option("--listen", cfg.listen_addr, "listen address host:port")
        ->capture_default_str();
    app.add_option("--timeout", cfg.receive_timeout_s, "per-connection receive timeout (s)")
        ->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    // The environment variable overrides the configured store path.
    if (const char* env = std::getenv("FORESTVEIL_STORE")) cfg.store_dir = env;

    try {
        transport::ForestServer server(std::move(cfg));
        server.bind();
        std::printf("serving %zu model(s) on port %u\n", server.store().size(), server.port());
        std::fflush(stdout);
        server.run();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "server: %s\n", e.what());
        return 1;
    }
    return 0;
}
