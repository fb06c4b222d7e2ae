// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
//
// Key-authority role: generates the system key pair and writes the key files
// that are distributed out of band (the public key to providers and the
// server, the secret key to authenticated users).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "forestveil/lhe/paillier.hpp"

namespace fs = std::filesystem;
using namespace forestveil;

namespace {

void write_file(const fs::path& path, const Bytes& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"forestveil key authority: generate the system key pair"};
    uint32_t bits = 2048;
    std::string out_dir;
    app.add_option("--bits", bits, "modulus size (1024, 2048 or 3072)")->capture_default_str();
    app.add_option("--out", out_dir, "output directory for forestveil.pk / forestveil.sk")
        ->required();
    CLI11_PARSE(app, argc, argv);

    try {
        fs::create_directories(out_dir);
        util::Rng rng;
        lhe::KeyPair keys = lhe::keygen(bits, rng);
        fs::path pk_path = fs::path(out_dir) / "forestveil.pk";
        fs::path sk_path = fs::path(out_dir) / "forestveil.sk";
        write_file(pk_path, keys.pk.serialize());
        write_file(sk_path, keys.sk.serialize());
        std::printf("wrote %s and %s (%u-bit modulus)\n", pk_path.c_str(), sk_path.c_str(), bits);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "keygen: %s\n", e.what());
        return 1;
    }
    return 0;
}
