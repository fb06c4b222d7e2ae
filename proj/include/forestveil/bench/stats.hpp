// Copyright (c) 2026 The ForestVeil Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace forestveil::bench {

double mean(std::span<const double> xs);
double stdev(std::span<const double> xs);        // sample standard deviation
double ci95_halfwidth(std::span<const double> xs);

struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace forestveil::bench
