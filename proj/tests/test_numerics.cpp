// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "sqdaa/numerics.hpp"

using namespace sqdaa;

namespace {

// Direct-summation binomial tail oracle.
double binomial_tail_oracle(std::uint64_t n, std::uint64_t k, double p) {
  double total = 0.0;
  for (std::uint64_t i = k; i <= n; ++i) {
    double log_term = std::lgamma(static_cast<double>(n + 1)) -
                      std::lgamma(static_cast<double>(i + 1)) -
                      std::lgamma(static_cast<double>(n - i + 1)) +
                      static_cast<double>(i) * std::log(p) +
                      static_cast<double>(n - i) * std::log1p(-p);
    total += std::exp(log_term);
  }
  return total;
}

}  // namespace

TEST_CASE("incomplete beta against the direct binomial sum") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t n = 1 + rng() % 200;
    const std::uint64_t k = 1 + rng() % n;
    const double p = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    CHECK(binomial_tail(n, k, p) ==
          doctest::Approx(binomial_tail_oracle(n, k, p)).epsilon(1e-10));
  }
}

TEST_CASE("binomial tail edge cases") {
  CHECK(binomial_tail(10, 0, 0.3) == doctest::Approx(1.0));
  CHECK(binomial_tail(10, 11, 0.3) == doctest::Approx(0.0));
}

TEST_CASE("majority vote shot search") {
  // Frozen from the direct binomial sum at p = 8/pi^2 (full overlap):
  // the smallest odd count reaching 0.99 majority confidence is 11.
  const double p = 8.0 / (M_PI * M_PI);
  CHECK(majority_vote_shots(p, 0.99) == 11);
  CHECK(majority_probability(11, p) >= 0.99);
  CHECK(majority_probability(9, p) < 0.99);
  // Minimality against the oracle for assorted p.
  for (double q : {0.6, 0.7, 0.9}) {
    const std::uint64_t shots = majority_vote_shots(q, 0.99);
    CHECK(shots % 2 == 1);
    CHECK(binomial_tail_oracle(shots, shots / 2 + 1, q) >= 0.99);
    if (shots >= 3) {
      CHECK(binomial_tail_oracle(shots - 2, (shots - 2) / 2 + 1, q) < 0.99);
    }
  }
  CHECK_THROWS(majority_vote_shots(0.5, 0.99));
}

TEST_CASE("linear fit recovers exact lines") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 * xi - 2.0);
  const LinearFit fit = linear_fit(x, y);
  CHECK(fit.slope == doctest::Approx(3.0));
  CHECK(fit.intercept == doctest::Approx(-2.0));
  CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("nearest-rank percentiles") {
  const std::vector<double> v{5, 1, 4, 2, 3};
  CHECK(percentile_nearest_rank(v, 50.0) == doctest::Approx(3.0));
  CHECK(percentile_nearest_rank(v, 16.0) == doctest::Approx(1.0));
  CHECK(percentile_nearest_rank(v, 84.0) == doctest::Approx(5.0));
  CHECK(percentile_nearest_rank(v, 100.0) == doctest::Approx(5.0));
  CHECK(percentile_nearest_rank(v, 0.0) == doctest::Approx(1.0));
}
