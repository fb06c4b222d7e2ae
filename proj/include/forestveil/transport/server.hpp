// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <thread>

#include "forestveil/transport/socket.hpp"
#include "forestveil/transport/store.hpp"

namespace forestveil::transport {

// The untrusted server never holds secret-key material: its configuration is
// the model store location and the listen address only.
struct ServerConfig {
    std::string store_dir;
    std::string listen_addr = "127.0.0.1:0";
    int receive_timeout_s = 600;
};

class ForestServer {
  public:
    explicit ForestServer(ServerConfig cfg);
    ~ForestServer();

    // Binds the listener and loads persisted models.
    void bind();
    uint16_t port() const { return listener_.port(); }

    void run();    // blocking accept loop
    void start();  // accept loop on a background thread
    void stop();

    const ModelStore& store() const { return store_; }

  private:
    void serve(TcpStream stream);
    void handle_provider(FrameStream& fs);
    void handle_user(FrameStream& fs);

    ServerConfig cfg_;
    ModelStore store_;
    TcpListener listener_;
    std::thread accept_thread_;
    std::atomic<bool> stopping_{false};
    std::mutex workers_mu_;
    std::vector<std::thread> workers_;
};

}  // namespace forestveil::transport
