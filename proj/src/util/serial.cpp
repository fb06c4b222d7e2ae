// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/util/serial.hpp"

#include <cstring>

namespace forestveil::util {

Bytes mpz_to_bytes(const mpz_class& v) {
    if (sgn(v) < 0) throw SerialError("cannot serialize negative integer");
    if (v == 0) return {};
    size_t count = 0;
    Bytes out((mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8);
    mpz_export(out.data(), &count, 1, 1, 1, 0, v.get_mpz_t());
    out.resize(count);
    return out;
}

Bytes mpz_to_bytes_fixed(const mpz_class& v, size_t width) {
    Bytes mag = mpz_to_bytes(v);
    if (mag.size() > width) throw SerialError("integer does not fit fixed width");
    Bytes out(width, 0);
    std::memcpy(out.data() + (width - mag.size()), mag.data(), mag.size());
    return out;
}

mpz_class mpz_from_bytes(const uint8_t* p, size_t len) {
    mpz_class v;
    if (len > 0) mpz_import(v.get_mpz_t(), len, 1, 1, 1, 0, p);
    return v;
}

void ByteWriter::mpz(const mpz_class& v) {
    Bytes mag = mpz_to_bytes(v);
    u32(uint32_t(mag.size()));
    raw(mag);
}

void ByteWriter::mpz_fixed(const mpz_class& v, size_t width) {
    Bytes mag = mpz_to_bytes_fixed(v, width);
    u32(uint32_t(width));
    raw(mag);
}

mpz_class ByteReader::mpz(size_t max_width) {
    uint32_t len = u32();
    if (len > max_width) throw SerialError("integer length prefix out of range");
    const uint8_t* p = take(len);
    return mpz_from_bytes(p, len);
}

}  // namespace forestveil::util
