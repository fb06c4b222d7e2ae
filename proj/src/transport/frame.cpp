// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/frame.hpp"

#include "forestveil/util/serial.hpp"

namespace forestveil::transport {

const char* msg_type_name(MsgType t) {
    switch (t) {
        case MsgType::kHello: return "HELLO";
        case MsgType::kManifest: return "MANIFEST";
        case MsgType::kUploadModel: return "UPLOAD_MODEL";
        case MsgType::kQueryInit: return "QUERY_INIT";
        case MsgType::kScBatch: return "SC_BATCH";
        case MsgType::kGammaTilde: return "GAMMA_TILDE";
        case MsgType::kOtR1: return "OT_R1";
        case MsgType::kOtR2: return "OT_R2";
        case MsgType::kFinalShare: return "FINAL_SHARE";
        case MsgType::kError: return "ERROR";
    }
    return "UNKNOWN";
}

namespace {

bool known_type(uint8_t t) {
    switch (MsgType(t)) {
        case MsgType::kHello:
        case MsgType::kManifest:
        case MsgType::kUploadModel:
        case MsgType::kQueryInit:
        case MsgType::kScBatch:
        case MsgType::kGammaTilde:
        case MsgType::kOtR1:
        case MsgType::kOtR2:
        case MsgType::kFinalShare:
        case MsgType::kError:
            return true;
    }
    return false;
}

}  // namespace

Bytes encode_frame(const Frame& f) {
    if (f.payload.size() > kMaxFramePayload) throw TransportError("frame payload too large");
    Bytes out(kFrameHeaderBytes + f.payload.size());
    util::put_u32_be(out.data(), uint32_t(f.payload.size() + 1));
    out[4] = uint8_t(f.type);
    std::copy(f.payload.begin(), f.payload.end(), out.begin() + kFrameHeaderBytes);
    return out;
}

void FrameStream::send(MsgType type, Bytes payload) {
    Bytes wire = encode_frame({type, std::move(payload)});
    io_.write_all(wire.data(), wire.size());
    bytes_sent_ += wire.size();
    payload_sent_ += wire.size() - kFrameHeaderBytes;
    sent_by_type_[uint8_t(type)] += wire.size() - kFrameHeaderBytes;
}

Frame FrameStream::receive() {
    uint8_t header[kFrameHeaderBytes];
    io_.read_exact(header, sizeof(header));
    uint32_t length = util::get_u32_be(header);
    if (length < 1 || length > kMaxFramePayload + 1) throw TransportError("malformed frame length");
    if (!known_type(header[4])) throw TransportError("unknown frame type");
    Frame f;
    f.type = MsgType(header[4]);
    f.payload.resize(length - 1);
    if (!f.payload.empty()) io_.read_exact(f.payload.data(), f.payload.size());
    bytes_received_ += kFrameHeaderBytes + f.payload.size();
    payload_received_ += f.payload.size();
    received_by_type_[uint8_t(f.type)] += f.payload.size();
    return f;
}

Frame FrameStream::expect(MsgType type) {
    Frame f = receive();
    if (f.type == type) return f;
    if (f.type == MsgType::kError) {
        util::ByteReader r(f.payload);
        uint16_t code = r.u16();
        Bytes msg = r.raw(r.remaining());
        throw RemoteError(code, std::string(msg.begin(), msg.end()));
    }
    throw TransportError(std::string("expected ") + msg_type_name(type) + ", got " +
                         msg_type_name(f.type));
}

void FrameStream::send_error(uint16_t code, const std::string& message) {
    util::ByteWriter w;
    w.u16(code);
    w.raw(reinterpret_cast<const uint8_t*>(message.data()), message.size());
    send(MsgType::kError, w.take());
}

}  // namespace forestveil::transport
