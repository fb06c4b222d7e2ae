// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "forestveil/util/bytes.hpp"

namespace forestveil::transport {

class TransportError : public std::runtime_error {
  public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when the peer reports a protocol error (an ERROR frame).
class RemoteError : public std::runtime_error {
  public:
    RemoteError(uint16_t code, const std::string& message)
        : std::runtime_error(message), code_(code) {}
    uint16_t code() const { return code_; }

  private:
    uint16_t code_;
};

enum class MsgType : uint8_t {
    kHello = 0x01,
    kManifest = 0x02,
    kUploadModel = 0x10,
    kQueryInit = 0x20,
    kScBatch = 0x21,
    kGammaTilde = 0x22,
    kOtR1 = 0x30,
    kOtR2 = 0x31,
    kFinalShare = 0x40,
    kError = 0x7F,
};

const char* msg_type_name(MsgType t);

struct Frame {
    MsgType type = MsgType::kError;
    Bytes payload;
};

inline constexpr size_t kMaxFramePayload = (64u << 20) - 1;  // 64 MiB frame cap
inline constexpr size_t kFrameHeaderBytes = 5;               // length + type

// A frame on the wire: 4-byte big-endian length (= 1 + payload size), one
// type byte, payload.
Bytes encode_frame(const Frame& f);

// Abstract byte stream the frame codec runs over (TCP socket or an in-memory
// pipe in tests).
class ByteStream {
  public:
    virtual ~ByteStream() = default;
    virtual void read_exact(uint8_t* buf, size_t len) = 0;
    virtual void write_all(const uint8_t* buf, size_t len) = 0;
};

// Frame codec with per-direction byte counters.
class FrameStream {
  public:
    explicit FrameStream(ByteStream& io) : io_(io) {}

    void send(MsgType type, Bytes payload);
    Frame receive();

    // Receives a frame of the given type; decodes ERROR frames into
    // RemoteError, anything else into TransportError.
    Frame expect(MsgType type);

    void send_error(uint16_t code, const std::string& message);

    uint64_t bytes_sent() const { return bytes_sent_; }
    uint64_t bytes_received() const { return bytes_received_; }
    // Payload-only accounting (frame headers excluded).
    uint64_t payload_bytes_sent() const { return payload_sent_; }
    uint64_t payload_bytes_received() const { return payload_received_; }
    // Per-frame-type payload byte totals, either direction.
    uint64_t payload_sent_of(MsgType t) const { return sent_by_type_[uint8_t(t)]; }
    uint64_t payload_received_of(MsgType t) const { return received_by_type_[uint8_t(t)]; }

  private:
    ByteStream& io_;
    uint64_t bytes_sent_ = 0;
    uint64_t bytes_received_ = 0;
    uint64_t payload_sent_ = 0;
    uint64_t payload_received_ = 0;
    uint64_t sent_by_type_[256] = {};
    uint64_t received_by_type_[256] = {};
};

}  // namespace forestveil::transport
