// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/util/bytes.hpp"

#include <sys/random.h>

#include <stdexcept>

namespace forestveil::util {

std::string to_hex(const uint8_t* data, size_t len) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (size_t i = 0; i < len; ++i) {
        out.push_back(digits[data[i] >> 4]);
        out.push_back(digits[data[i] & 0xf]);
    }
    return out;
}

void random_bytes(uint8_t* buf, size_t len) {
    size_t off = 0;
    while (off < len) {
        ssize_t got = getrandom(buf + off, len - off, 0);
        if (got < 0) throw std::runtime_error("getrandom failed");
        off += size_t(got);
    }
}

}  // namespace forestveil::util
