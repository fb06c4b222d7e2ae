// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "forestveil/lhe/paillier.hpp"

namespace forestveil::lhe {

// Fixed-point grid: reals scaled by 10^3 to integers, at most 3 fractional
// digits, magnitude at most 10^3. Negative values live in the upper half of
// the message group.
inline constexpr int64_t kFixedScale = 1000;
inline constexpr int64_t kFixedMaxMilli = 1000 * kFixedScale;

// Scaled integer ("milli") representation of an on-grid real. Throws on
// out-of-range magnitude or excess fractional precision.
int64_t to_milli(double v);
inline double from_milli(int64_t milli) { return double(milli) / double(kFixedScale); }

// Grid membership check without throwing.
bool on_grid(double v);

mpz_class encode_fixed(const MessageGroup& g, double v);
double decode_fixed(const MessageGroup& g, const mpz_class& e);

}  // namespace forestveil::lhe
