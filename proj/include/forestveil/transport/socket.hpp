// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "forestveil/transport/frame.hpp"

namespace forestveil::transport {

// Blocking TCP stream with an optional receive timeout.
class TcpStream : public ByteStream {
  public:
    TcpStream() = default;
    explicit TcpStream(int fd) : fd_(fd) {}
    ~TcpStream() override;
    TcpStream(TcpStream&& o) noexcept;
    TcpStream& operator=(TcpStream&& o) noexcept;

    static TcpStream connect(const std::string& host, uint16_t port);

    void set_receive_timeout(int seconds);
    void read_exact(uint8_t* buf, size_t len) override;
    void write_all(const uint8_t* buf, size_t len) override;
    void close();
    bool valid() const { return fd_ >= 0; }

  private:
    int fd_ = -1;
};

class TcpListener {
  public:
    TcpListener() = default;
    ~TcpListener();
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    // addr: "host:port"; port 0 picks a free port.
    void bind(const std::string& addr);
    uint16_t port() const { return port_; }

    // Returns an invalid stream when the listener was shut down.
    TcpStream accept();
    void shutdown();

  private:
    int fd_ = -1;
    uint16_t port_ = 0;
};

// Splits "host:port".
std::pair<std::string, uint16_t> parse_addr(const std::string& addr);

}  // namespace forestveil::transport
