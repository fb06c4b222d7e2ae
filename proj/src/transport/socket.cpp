// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace forestveil::transport {

namespace {
[[noreturn]] void sys_fail(const std::string& what) {
    throw TransportError(what + ": " + std::strerror(errno));
}
}  // namespace

TcpStream::~TcpStream() { close(); }

TcpStream::TcpStream(TcpStream&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }

TcpStream& TcpStream::operator=(TcpStream&& o) noexcept {
    if (this != &o) {
        close();
        fd_ = o.fd_;
        o.fd_ = -1;
    }
    return *this;
}

void TcpStream::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

TcpStream TcpStream::connect(const std::string& host, uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    std::string service = std::to_string(port);
    int rc = getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
    if (rc != 0) throw TransportError("resolve " + host + ": " + gai_strerror(rc));
    int fd = -1;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    freeaddrinfo(res);
    if (fd < 0) throw TransportError("cannot connect to " + host + ":" + service);
    int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return TcpStream(fd);
}

void TcpStream::set_receive_timeout(int seconds) {
    timeval tv{};
    tv.tv_sec = seconds;
    if (setsockopt(fd_, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv)) != 0)
        sys_fail("set receive timeout");
}

void TcpStream::read_exact(uint8_t* buf, size_t len) {
    size_t off = 0;
    while (off < len) {
        ssize_t got = ::recv(fd_, buf + off, len - off, 0);
        if (got == 0) throw TransportError("connection closed by peer");
        if (got < 0) {
            if (errno == EINTR) continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK) throw TransportError("receive timeout");
            sys_fail("recv");
        }
        off += size_t(got);
    }
}

void TcpStream::write_all(const uint8_t* buf, size_t len) {
    size_t off = 0;
    while (off < len) {
        ssize_t sent = ::send(fd_, buf + off, len - off, MSG_NOSIGNAL);
        if (sent < 0) {
            if (errno == EINTR) continue;
            sys_fail("send");
        }
        off += size_t(sent);
    }
}

TcpListener::~TcpListener() { shutdown(); }

void TcpListener::bind(const std::string& addr) {
    auto [host, port] = parse_addr(addr);
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) sys_fail("socket");
    int one = 1;
    setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(port);
    if (host.empty() || host == "0.0.0.0" || host == "*")
        sa.sin_addr.s_addr = htonl(INADDR_ANY);
    else if (inet_pton(AF_INET, host.c_str(), &sa.sin_addr) != 1) {
        hostent* he = gethostbyname(host.c_str());
        if (!he || he->h_addrtype != AF_INET) throw TransportError("cannot resolve " + host);
        std::memcpy(&sa.sin_addr, he->h_addr, sizeof(sa.sin_addr));
    }
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&sa), sizeof(sa)) != 0) sys_fail("bind " + addr);
    if (::listen(fd_, 16) != 0) sys_fail("listen");
    socklen_t slen = sizeof(sa);
    if (getsockname(fd_, reinterpret_cast<sockaddr*>(&sa), &slen) != 0) sys_fail("getsockname");
    port_ = ntohs(sa.sin_port);
}

TcpStream TcpListener::accept() {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) return TcpStream();  // listener shut down
    int one = 1;
    setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    return TcpStream(fd);
}

void TcpListener::shutdown() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

std::pair<std::string, uint16_t> parse_addr(const std::string& addr) {
    size_t colon = addr.rfind(':');
    if (colon == std::string::npos) throw TransportError("address must be host:port");
    std::string host = addr.substr(0, colon);
    unsigned long port = std::stoul(addr.substr(colon + 1));
    if (port > 65535) throw TransportError("port out of range");
    return {host, uint16_t(port)};
}

}  // namespace forestveil::transport
