// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstdint>

namespace forestveil::bench {

// Plain snapshot of the cryptographic-operation counters.
struct CounterSnapshot {
    uint64_t encryptions = 0;
    uint64_t decryptions = 0;
    uint64_t hom_adds = 0;
    uint64_t scalar_muls = 0;
    uint64_t prf_calls = 0;
    uint64_t ot_base_calls = 0;

    CounterSnapshot operator-(const CounterSnapshot& o) const {
        return {encryptions - o.encryptions, decryptions - o.decryptions,
                hom_adds - o.hom_adds,       scalar_muls - o.scalar_muls,
                prf_calls - o.prf_calls,     ot_base_calls - o.ot_base_calls};
    }
};

// Per-party ciphertext-operation counters. Monotone during a run, reset per
// experiment; safe to increment from the worker threads of one run.
struct OpCounters {
    std::atomic<uint64_t> encryptions{0};
    std::atomic<uint64_t> decryptions{0};
    std::atomic<uint64_t> hom_adds{0};
    std::atomic<uint64_t> scalar_muls{0};
    std::atomic<uint64_t> prf_calls{0};
    std::atomic<uint64_t> ot_base_calls{0};

    CounterSnapshot snapshot() const {
        return {encryptions.load(), decryptions.load(), hom_adds.load(),
                scalar_muls.load(), prf_calls.load(),   ot_base_calls.load()};
    }

    void reset() {
        encryptions = 0;
        decryptions = 0;
        hom_adds = 0;
        scalar_muls = 0;
        prf_calls = 0;
        ot_base_calls = 0;
    }
};

namespace detail {
inline thread_local OpCounters* t_counters = nullptr;
}

// Installs `c` as the ambient counter sink for the current thread; restores
// the previous sink on destruction. The LHE/PRF/OT primitives report to the
// ambient sink, so counts reflect operations actually performed.
class CounterScope {
  public:
    explicit CounterScope(OpCounters* c) : prev_(detail::t_counters) { detail::t_counters = c; }
    ~CounterScope() { detail::t_counters = prev_; }
    CounterScope(const CounterScope&) = delete;
    CounterScope& operator=(const CounterScope&) = delete;

    static OpCounters* current() { return detail::t_counters; }

  private:
    OpCounters* prev_;
};

inline void count_encryptions(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->encryptions.fetch_add(k, std::memory_order_relaxed);
}
inline void count_decryptions(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->decryptions.fetch_add(k, std::memory_order_relaxed);
}
inline void count_hom_adds(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->hom_adds.fetch_add(k, std::memory_order_relaxed);
}
inline void count_scalar_muls(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->scalar_muls.fetch_add(k, std::memory_order_relaxed);
}
inline void count_prf_calls(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->prf_calls.fetch_add(k, std::memory_order_relaxed);
}
inline void count_ot_base_calls(uint64_t k = 1) {
    if (auto* c = detail::t_counters) c->ot_base_calls.fetch_add(k, std::memory_order_relaxed);
}

}  // namespace forestveil::bench
