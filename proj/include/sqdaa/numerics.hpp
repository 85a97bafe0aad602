// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace sqdaa {

/// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// P(Binomial(n, p) >= k) via the incomplete beta identity.
double binomial_tail(std::uint64_t n, std::uint64_t k, double p);

/// P(strict majority of n trials succeed), n odd.
double majority_probability(std::uint64_t n_odd, double p);

/// Smallest odd shot count whose majority probability reaches `confidence`.
/// Requires p > 1/2.
std::uint64_t majority_vote_shots(double p, double confidence);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

/// Nearest-rank percentile (pct in [0, 100]) of an unsorted sample.
double percentile_nearest_rank(std::vector<double> values, double pct);

}  // namespace sqdaa
