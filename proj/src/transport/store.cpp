// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/transport/store.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "forestveil/transport/frame.hpp"

namespace forestveil::transport {

namespace fs = std::filesystem;

void atomic_write_file(const std::string& path, const Bytes& data) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw TransportError("cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
        out.flush();
        if (!out) throw TransportError("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw TransportError("cannot rename " + tmp + " to " + path);
}

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TransportError("cannot open " + path);
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

ModelStore::ModelStore(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
}

std::string ModelStore::model_path(uint32_t id) const {
    char name[32];
    std::snprintf(name, sizeof(name), "model_%04u.bin", id);
    return (fs::path(dir_) / name).string();
}

void ModelStore::load() {
    std::unique_lock lock(mu_);
    std::string mf = (fs::path(dir_) / "manifest.bin").string();
    if (!fs::exists(mf)) return;
    manifest_ = parse_manifest(read_file(mf));
    models_.clear();
    for (const auto& e : manifest_->providers) {
        Bytes bytes = read_file(model_path(e.provider_id));
        protocol::EncryptedModel model = protocol::parse_model(manifest_->pk, bytes);
        model.enc_seed = e.enc_seed;
        models_.emplace(e.provider_id, std::move(model));
    }
}

const Manifest& ModelStore::manifest() const {
    if (!manifest_) throw TransportError("store has no manifest");
    return *manifest_;
}

uint32_t ModelStore::add_model(const lhe::PublicKey& pk, uint32_t n_features, uint16_t depth,
                               uint32_t requested_id,
                               const std::array<lhe::Ciphertext, 2>& enc_seed,
                               const Bytes& model_bytes) {
    std::unique_lock lock(mu_);
    if (manifest_) {
        if (!(manifest_->pk == pk)) throw TransportError("public key differs from existing models");
        if (manifest_->n_features != n_features)
            throw TransportError("feature dimension differs from existing models");
    } else {
        Manifest m;
        m.pk = pk;
        m.n_features = n_features;
        manifest_ = std::move(m);
    }

    uint32_t id = requested_id;
    if (id == 0) {
        id = 1;
        while (models_.count(id)) ++id;
    } else if (models_.count(id)) {
        throw TransportError("duplicate provider id");
    }

    protocol::EncryptedModel model = protocol::parse_model(manifest_->pk, model_bytes);
    if (model.n_features != n_features || model.depth != depth)
        throw TransportError("model header does not match upload parameters");
    model.provider_id = id;
    model.enc_seed = enc_seed;

    atomic_write_file(model_path(id), model_bytes);
    ManifestEntry entry;
    entry.provider_id = id;
    entry.tree_count = model.tree_count();
    entry.depth = depth;
    entry.enc_seed = enc_seed;
    manifest_->providers.push_back(entry);
    persist_manifest();
    models_.emplace(id, std::move(model));
    return id;
}

void ModelStore::persist_manifest() {
    std::string mf = (fs::path(dir_) / "manifest.bin").string();
    atomic_write_file(mf, serialize_manifest(*manifest_));
}

std::vector<const protocol::EncryptedModel*> ModelStore::models() const {
    std::vector<const protocol::EncryptedModel*> out;
    out.reserve(models_.size());
    if (!manifest_) return out;
    for (const auto& e : manifest_->providers) out.push_back(&models_.at(e.provider_id));
    return out;
}

}  // namespace forestveil::transport
