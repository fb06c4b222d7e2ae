// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forestveil/forest/tree.hpp"

namespace forestveil::forest {

// Root-to-leaf path polynomial of a complete binary tree of depth d: the
// product of d binomials, one per splitting node on the path, (x_p - 1) for a
// left turn and (x_p + 1) for a right turn. Node positions are level order,
// 0-based.
struct PathPolynomial {
    int32_t leaf_index = 0;
    std::vector<int32_t> node_indices;  // the index set, root first (size d)
    std::vector<int8_t> turns;          // -1 left, +1 right (size d)

    // Evaluates with per-node orientation signs: factor (x_p + turn * g_p).
    // Passing an empty gamma uses the canonical form g = +1 everywhere.
    int64_t evaluate(std::span<const int8_t> xs, std::span<const int8_t> gamma = {}) const;
};

std::vector<PathPolynomial> path_polynomials(int depth);

// Index of the unique leaf whose polynomial is nonzero on `xs` (with the
// given orientation). Throws ForestError when zero or multiple polynomials
// are nonzero, which indicates corruption.
size_t unique_nonzero_leaf(const std::vector<PathPolynomial>& polys, std::span<const int8_t> xs,
                           std::span<const int8_t> gamma = {});

}  // namespace forestveil::forest
