// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#include "forestveil/forest/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "forestveil/forest/tree.hpp"

namespace forestveil::forest {

double auc(std::span<const double> scores, std::span<const int8_t> labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw ForestError("auc: inconsistent input sizes");
    size_t n = scores.size();
    int64_t pos = 0;
    for (int8_t y : labels) pos += y;
    int64_t neg = int64_t(n) - pos;
    if (pos == 0 || neg == 0) throw ForestError("auc undefined for one-class input");

    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return scores[a] < scores[b]; });

    // Average ranks over tie groups; rank-sum of positives gives the
    // Mann-Whitney statistic.
    double rank_sum_pos = 0.0;
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
        double avg_rank = 0.5 * double(i + 1 + j);  // ranks are 1-based
        for (size_t k = i; k < j; ++k)
            if (labels[idx[k]]) rank_sum_pos += avg_rank;
        i = j;
    }
    double u = rank_sum_pos - double(pos) * double(pos + 1) / 2.0;
    return u / (double(pos) * double(neg));
}

}  // namespace forestveil::forest
