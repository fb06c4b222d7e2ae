// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "forestveil/protocol/encrypted_model.hpp"
#include "forestveil/transport/manifest.hpp"

namespace forestveil::transport {

// Server-side persistence: one file per provider model plus a manifest file,
// written atomically via temp-file rename. The store never sees secret-key
// material; model files keep the uploaded bytes verbatim.
class ModelStore {
  public:
    explicit ModelStore(std::string dir);

    // Loads the manifest and all model files present on disk.
    void load();

    bool has_key() const { return manifest_.has_value(); }
    const Manifest& manifest() const;

    // Registers a model upload: validates key/dimension consistency and the
    // provider id (0 = assign the next free id). Returns the stored id.
    uint32_t add_model(const lhe::PublicKey& pk, uint32_t n_features, uint16_t depth,
                       uint32_t requested_id, const std::array<lhe::Ciphertext, 2>& enc_seed,
                       const Bytes& model_bytes);

    // Parsed models in manifest order.
    std::vector<const protocol::EncryptedModel*> models() const;
    size_t size() const { return models_.size(); }

    std::string model_path(uint32_t id) const;

    // Shared lock held by query sessions; uploads take the exclusive side.
    std::shared_mutex& mutex() const { return mu_; }

  private:
    void persist_manifest();

    std::string dir_;
    std::optional<Manifest> manifest_;
    std::map<uint32_t, protocol::EncryptedModel> models_;
    mutable std::shared_mutex mu_;
};

// Atomic write helper (temp file + rename).
void atomic_write_file(const std::string& path, const Bytes& data);
Bytes read_file(const std::string& path);

}  // namespace forestveil::transport
