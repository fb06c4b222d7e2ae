// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>

#include "forestveil/protocol/online.hpp"
#include "forestveil/transport/wire.hpp"

namespace forestveil::transport {

// Provider-side upload: connects, authenticates the role and ships the
// encrypted model; returns the id assigned by the server.
uint32_t upload_model(const std::string& host, uint16_t port, const lhe::PublicKey& pk,
                      const protocol::EncryptedModel& model, uint32_t requested_id = 0);

struct QueryStats {
    double manifest_seconds = 0;  // connect + manifest
    double input_seconds = 0;     // seed decryption + input encryption (R1)
    double path_seconds = 0;      // comparison batch + path computation (R2)
    double transfer_seconds = 0;  // label transfers (R3)
    double final_seconds = 0;     // aggregate share (R4)
    uint64_t bytes_sent = 0;
    uint64_t bytes_received = 0;
    // payload bytes per frame type
    std::map<std::string, uint64_t> payload_sent;
    std::map<std::string, uint64_t> payload_received;
};

// Full query session against a running server.
protocol::OnlineResult query_predict(const std::string& host, uint16_t port,
                                     const lhe::SecretKey& sk,
                                     const std::vector<forest::Milli>& x,
                                     QueryStats* stats = nullptr);

// Fetches only the manifest (HELLO as user, then disconnect).
Manifest fetch_manifest(const std::string& host, uint16_t port);

}  // namespace forestveil::transport
