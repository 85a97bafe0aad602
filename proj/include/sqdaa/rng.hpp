// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "sqdaa/error.hpp"

namespace sqdaa {

/// Seeded RNG stream used everywhere sampling happens. Wraps mt19937_64 but
/// derives uniforms from raw 64-bit output, so sequences are identical across
/// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  static const char* algorithm_name() { return "mt19937_64/inverse-cdf"; }

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound).
  std::uint64_t uniform_below(std::uint64_t bound) {
    require(bound > 0, ErrorCode::InvalidArgument, "bound must be positive");
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() -
        std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Number of Bernoulli(p) trials up to and including the first success.
  std::uint64_t geometric(double p) {
    require(p > 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
            "geometric probability must be in (0, 1]");
    if (p >= 1.0) return 1;
    const double u = uniform01();
    const double g = std::floor(std::log1p(-u) / std::log1p(-p));
    if (!(g >= 0.0) || g >= 9.0e18) {
      return std::uint64_t{9000000000000000000ull};
    }
    return static_cast<std::uint64_t>(g) + 1;
  }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

/// Inverse-CDF sampler over a fixed discrete distribution.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::vector<double>& probabilities) {
    cdf_.reserve(probabilities.size());
    double acc = 0.0;
    for (double p : probabilities) {
      acc += p;
      cdf_.push_back(acc);
    }
    require(!cdf_.empty() && acc > 0.0, ErrorCode::InvalidArgument,
            "distribution must have positive mass");
    cdf_.back() = std::max(cdf_.back(), 1.0);  // guard the final bin
  }

  std::size_t draw(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<std::size_t>(
        it == cdf_.end() ? cdf_.size() - 1 : it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

}  // namespace sqdaa
