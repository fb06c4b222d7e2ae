// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/forest.hpp"

#include <cstring>
#include <fstream>

#include "forestveil/util/serial.hpp"

namespace forestveil::forest {

namespace {
constexpr char kMagic[4] = {'F', 'V', 'R', 'F'};
constexpr uint8_t kVersion = 1;
}  // namespace

int RandomForest::max_depth() const {
    int d = 0;
    for (const DecisionTree& t : trees) d = std::max(d, t.depth());
    return d;
}

int64_t RandomForest::predict_scaled_sum(std::span<const Milli> x) const {
    if (trees.empty()) throw ForestError("empty forest");
    int64_t sum = 0;
    for (const DecisionTree& t : trees) sum += t.evaluate_scaled(x);
    return sum;
}

double RandomForest::predict(std::span<const Milli> x) const {
    return double(predict_scaled_sum(x)) / (1000.0 * double(trees.size()));
}

Bytes serialize_forest(const RandomForest& rf) {
    util::ByteWriter w;
    w.raw(reinterpret_cast<const uint8_t*>(kMagic), 4);
    w.u8(kVersion);
    w.u32(rf.n_features);
    w.u32(uint32_t(rf.trees.size()));
    for (const DecisionTree& t : rf.trees) {
        w.u16(uint16_t(t.depth()));
        for (const SplittingNode& n : t.nodes()) {
            w.u32(uint32_t(n.feature));
            w.u64(uint64_t(n.threshold));
        }
        for (Milli l : t.leaves()) w.u32(uint32_t(l));
    }
    return w.take();
}

RandomForest parse_forest(const Bytes& data) {
    util::ByteReader r(data);
    Bytes magic = r.raw(4);
    if (std::memcmp(magic.data(), kMagic, 4) != 0) throw ForestError("not a forest file");
    if (r.u8() != kVersion) throw ForestError("unsupported forest file version");
    RandomForest rf;
    rf.n_features = r.u32();
    uint32_t m = r.u32();
    rf.trees.reserve(m);
    for (uint32_t j = 0; j < m; ++j) {
        int depth = r.u16();
        if (depth < 1 || depth > 24) throw ForestError("corrupt forest file");
        size_t nn = (size_t(1) << depth) - 1;
        std::vector<SplittingNode> nodes(nn);
        for (SplittingNode& n : nodes) {
            n.feature = int32_t(r.u32());
            n.threshold = Milli(int64_t(r.u64()));
        }
        std::vector<Milli> leaves(nn + 1);
        for (Milli& l : leaves) l = Milli(int32_t(r.u32()));
        rf.trees.emplace_back(depth, std::move(nodes), std::move(leaves));
    }
    r.expect_end();
    return rf;
}

void save_forest(const RandomForest& rf, const std::string& path) {
    Bytes data = serialize_forest(rf);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ForestError("cannot write forest file: " + path);
    out.write(reinterpret_cast<const char*>(data.data()), std::streamsize(data.size()));
}

RandomForest load_forest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ForestError("cannot open forest file: " + path);
    Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_forest(data);
}

}  // namespace forestveil::forest
