// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/path_poly.hpp"

namespace forestveil::forest {

int64_t PathPolynomial::evaluate(std::span<const int8_t> xs, std::span<const int8_t> gamma) const {
    int64_t z = 1;
    for (size_t j = 0; j < node_indices.size(); ++j) {
        size_t p = size_t(node_indices[j]);
        int64_t g = gamma.empty() ? 1 : gamma[p];
        z *= int64_t(xs[p]) + int64_t(turns[j]) * g;
        if (z == 0) return 0;
    }
    return z;
}

std::vector<PathPolynomial> path_polynomials(int depth) {
    if (depth < 1 || depth > 24) throw ForestError("tree depth out of range");
    size_t leaves = size_t(1) << depth;
    std::vector<PathPolynomial> out;
    out.reserve(leaves);
    for (size_t i = 0; i < leaves; ++i) {
        PathPolynomial poly;
        poly.leaf_index = int32_t(i);
        poly.node_indices.reserve(depth);
        poly.turns.reserve(depth);
        size_t p = 0;
        for (int level = depth - 1; level >= 0; --level) {
            bool right = (i >> level) & 1;
            poly.node_indices.push_back(int32_t(p));
            poly.turns.push_back(right ? int8_t(1) : int8_t(-1));
            p = 2 * p + (right ? 2 : 1);
        }
        out.push_back(std::move(poly));
    }
    return out;
}

size_t unique_nonzero_leaf(const std::vector<PathPolynomial>& polys, std::span<const int8_t> xs,
                           std::span<const int8_t> gamma) {
    size_t hit = polys.size();
    for (size_t i = 0; i < polys.size(); ++i) {
        if (polys[i].evaluate(xs, gamma) != 0) {
            if (hit != polys.size()) throw ForestError("multiple nonzero path polynomials");
            hit = i;
        }
    }
    if (hit == polys.size()) throw ForestError("no nonzero path polynomial");
    return hit;
}

}  // namespace forestveil::forest
