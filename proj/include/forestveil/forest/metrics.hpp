// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace forestveil::forest {

// Area under the ROC curve: the probability that a random positive scores
// above a random negative, ties counted half. Requires both classes present.
double auc(std::span<const double> scores, std::span<const int8_t> labels);

}  // namespace forestveil::forest
