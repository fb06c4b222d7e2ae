// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "forestveil/util/bytes.hpp"

namespace forestveil::util {

class SerialError : public std::runtime_error {
  public:
    explicit SerialError(const std::string& what) : std::runtime_error(what) {}
};

// Big-endian binary writer. Big integers are written as a 4-byte big-endian
// length prefix followed by big-endian magnitude bytes; fixed-width fields pad
// the magnitude with leading zeros so re-encoding is byte-identical.
class ByteWriter {
  public:
    void u8(uint8_t v) { buf_.push_back(v); }
    void u16(uint16_t v) {
        buf_.push_back(uint8_t(v >> 8));
        buf_.push_back(uint8_t(v));
    }
    void u32(uint32_t v) {
        size_t off = buf_.size();
        buf_.resize(off + 4);
        put_u32_be(buf_.data() + off, v);
    }
    void u64(uint64_t v) {
        size_t off = buf_.size();
        buf_.resize(off + 8);
        put_u64_be(buf_.data() + off, v);
    }
    void raw(const uint8_t* p, size_t len) { buf_.insert(buf_.end(), p, p + len); }
    void raw(const Bytes& b) { raw(b.data(), b.size()); }

    void mpz(const mpz_class& v);                     // minimal-width magnitude
    void mpz_fixed(const mpz_class& v, size_t width); // zero-padded to width bytes

    Bytes take() { return std::move(buf_); }
    const Bytes& data() const { return buf_; }
    size_t size() const { return buf_.size(); }

  private:
    Bytes buf_;
};

class ByteReader {
  public:
    explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}
    explicit ByteReader(const Bytes& b) : data_(b.data(), b.size()) {}
    // The reader is a view; it must not outlive the buffer.
    explicit ByteReader(Bytes&&) = delete;

    uint8_t u8() { return take(1)[0]; }
    uint16_t u16() {
        const uint8_t* p = take(2);
        return uint16_t((uint16_t(p[0]) << 8) | p[1]);
    }
    uint32_t u32() { return get_u32_be(take(4)); }
    uint64_t u64() { return get_u64_be(take(8)); }
    Bytes raw(size_t len) {
        const uint8_t* p = take(len);
        return Bytes(p, p + len);
    }
    mpz_class mpz(size_t max_width = 1 << 20);

    size_t remaining() const { return data_.size() - pos_; }
    bool at_end() const { return remaining() == 0; }
    void expect_end() const {
        if (!at_end()) throw SerialError("trailing bytes in message");
    }

  private:
    const uint8_t* take(size_t len) {
        if (remaining() < len) throw SerialError("message truncated");
        const uint8_t* p = data_.data() + pos_;
        pos_ += len;
        return p;
    }

    std::span<const uint8_t> data_;
    size_t pos_ = 0;
};

// Magnitude-only conversions used by the writer/reader and the PRF.
Bytes mpz_to_bytes(const mpz_class& v);                   // minimal big-endian
Bytes mpz_to_bytes_fixed(const mpz_class& v, size_t width);
mpz_class mpz_from_bytes(const uint8_t* p, size_t len);
inline mpz_class mpz_from_bytes(const Bytes& b) { return mpz_from_bytes(b.data(), b.size()); }

}  // namespace forestveil::util
