// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>

namespace forestveil::util {

// Runs fn(i) for i in [0, n) across hardware threads. The ambient counter
// scope of the caller is re-installed inside each worker, so instrumented
// runs stay attributed to the right party. Falls back to a serial loop when
// only one hardware thread is available.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

size_t hardware_threads();

}  // namespace forestveil::util
