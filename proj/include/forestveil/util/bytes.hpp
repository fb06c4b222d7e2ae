// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace forestveil {

using Bytes = std::vector<uint8_t>;

namespace util {

std::string to_hex(const uint8_t* data, size_t len);
inline std::string to_hex(const Bytes& b) { return to_hex(b.data(), b.size()); }

// Fills buf from the OS entropy source.
void random_bytes(uint8_t* buf, size_t len);

inline void put_u32_be(uint8_t* p, uint32_t v) {
    p[0] = uint8_t(v >> 24);
    p[1] = uint8_t(v >> 16);
    p[2] = uint8_t(v >> 8);
    p[3] = uint8_t(v);
}

inline void put_u64_be(uint8_t* p, uint64_t v) {
    put_u32_be(p, uint32_t(v >> 32));
    put_u32_be(p + 4, uint32_t(v));
}

inline uint32_t get_u32_be(const uint8_t* p) {
    return (uint32_t(p[0]) << 24) | (uint32_t(p[1]) << 16) | (uint32_t(p[2]) << 8) | uint32_t(p[3]);
}

inline uint64_t get_u64_be(const uint8_t* p) {
    return (uint64_t(get_u32_be(p)) << 32) | get_u32_be(p + 4);
}

}  // namespace util
}  // namespace forestveil
