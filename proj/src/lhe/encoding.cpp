// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/lhe/encoding.hpp"

#include <cmath>
#include <string>

namespace forestveil::lhe {

namespace {

bool milli_of(double v, int64_t* out) {
    if (!std::isfinite(v)) return false;
    double scaled = v * double(kFixedScale);
    double rounded = std::nearbyint(scaled);
    // Parsing decimals to binary doubles perturbs the value by well under
    // this tolerance; anything larger means a fourth fractional digit.
    if (std::abs(scaled - rounded) > 1e-6 * std::max(1.0, std::abs(scaled))) return false;
    if (std::abs(rounded) > double(kFixedMaxMilli)) return false;
    *out = int64_t(rounded);
    return true;
}

}  // namespace

int64_t to_milli(double v) {
    int64_t m;
    if (!milli_of(v, &m))
        throw LheError("value " + std::to_string(v) + " is not on the fixed-point grid");
    return m;
}

bool on_grid(double v) {
    int64_t m;
    return milli_of(v, &m);
}

mpz_class encode_fixed(const MessageGroup& g, double v) { return g.encode_signed(to_milli(v)); }

double decode_fixed(const MessageGroup& g, const mpz_class& e) {
    mpz_class c = g.decode_signed(e);
    if (abs(c) > kFixedMaxMilli) throw LheError("decoded value exceeds the fixed-point range");
    return from_milli(c.get_si());
}

}  // namespace forestveil::lhe
