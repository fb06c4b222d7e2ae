// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "forestveil/crypto/base_ot.hpp"
#include "forestveil/crypto/prf.hpp"

namespace forestveil::crypto {

// 1-out-of-2^d oblivious transfer for equal-length strings, built from d
// base OTs. The sender holds 2^d strings; string i is masked with the d
// keystreams selected by the bits of i, plus a 16-byte all-zero redundancy
// tag that lets the receiver confirm it unmasked the intended index.
//
// Message flow (two messages, receiver first, like the base OT):
//   receiver -> sender: d base-OT requests
//   sender  -> receiver: d base-OT replies + all 2^d masked strings

struct OtReceiverMsg {
    std::vector<BaseOtReceiverMsg> base;  // d entries, bit 0 first
};

struct OtSenderMsg {
    std::vector<BaseOtSenderMsg> base;  // d entries
    std::vector<Bytes> ciphertexts;     // 2^d masked strings (payload + tag)
};

inline constexpr size_t kOtTagBytes = 16;

class OtReceiver {
  public:
    // index in [0, 2^depth); one receiver per transfer.
    OtReceiver(size_t depth, size_t index, util::Rng& rng);

    const OtReceiverMsg& message() const { return msg_; }

    // Unmasks the chosen string; throws if the redundancy tag fails.
    Bytes finish(const OtSenderMsg& reply) const;

    // Attempts to unmask an arbitrary index with the keys this receiver
    // holds; returns nullopt when the tag check fails. Exposed for tests.
    std::optional<Bytes> try_decrypt(const OtSenderMsg& reply, size_t index) const;

  private:
    size_t depth_;
    size_t index_;
    std::vector<BaseOtReceiver> base_;
    OtReceiverMsg msg_;
};

// Sender side: masks the strings and answers the base OTs in one shot.
// All strings must have equal length.
OtSenderMsg ot_send(const OtReceiverMsg& request, const std::vector<Bytes>& strings,
                    util::Rng& rng);

}  // namespace forestveil::crypto
