// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "forestveil/util/bytes.hpp"
#include "forestveil/util/rng.hpp"

namespace forestveil::crypto {

using Key128 = std::array<uint8_t, 16>;

// Prime-order elliptic-curve group for the base OT (default NIST P-256).
class EcGroup {
  public:
    static const EcGroup& p256();
    explicit EcGroup(int nid);
    ~EcGroup();
    EcGroup(const EcGroup&) = delete;
    EcGroup& operator=(const EcGroup&) = delete;

    size_t point_bytes() const { return 33; }  // compressed encoding

    struct Impl;
    Impl& impl() const { return *impl_; }

  private:
    std::unique_ptr<Impl> impl_;
};

// Two-message 1-out-of-2 oblivious transfer of 128-bit keys, receiver first:
//
//   receiver -> sender:  B = k*G + b*C          (C: fixed point, unknown dlog)
//   sender  -> receiver: A = a*G,  K0 + H(a*B),  K1 + H(a*(B - C))
//
// and the receiver recovers K_b with H(k*A). Honest-but-curious parties.
struct BaseOtReceiverMsg {
    Bytes point_b;  // compressed B
};

struct BaseOtSenderMsg {
    Bytes point_a;  // compressed A
    Key128 enc_key0{};
    Key128 enc_key1{};
};

class BaseOtReceiver {
  public:
    // `tag` domain-separates concurrent instances (fed into the key hash).
    BaseOtReceiver(const EcGroup& group, uint64_t tag, bool choice, util::Rng& rng);
    ~BaseOtReceiver();
    BaseOtReceiver(BaseOtReceiver&&) noexcept;
    BaseOtReceiver& operator=(BaseOtReceiver&&) noexcept;

    const BaseOtReceiverMsg& message() const { return msg_; }
    Key128 finish(const BaseOtSenderMsg& reply) const;

  private:
    const EcGroup* group_;
    uint64_t tag_;
    bool choice_;
    Bytes secret_;  // scalar k
    BaseOtReceiverMsg msg_;
};

// Sender side: one shot, consuming the receiver message.
BaseOtSenderMsg base_ot_send(const EcGroup& group, uint64_t tag, const BaseOtReceiverMsg& request,
                             const Key128& key0, const Key128& key1, util::Rng& rng);

}  // namespace forestveil::crypto
