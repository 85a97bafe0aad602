// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "sqdaa/error.hpp"

namespace sqdaa {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  detail::fail(ErrorCode::NumericError,
               "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  require(a > 0.0 && b > 0.0, ErrorCode::InvalidArgument,
          "beta parameters must be positive");
  require(x >= 0.0 && x <= 1.0, ErrorCode::InvalidArgument,
          "beta argument must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                        b * std::log1p(-x) + a * std::log(x)) *
                   beta_continued_fraction(b, a, 1.0 - x) / b;
}

double binomial_tail(std::uint64_t n, std::uint64_t k, double p) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument,
          "probability must lie in [0, 1]");
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  // P(X >= k) = I_p(k, n - k + 1)
  return regularized_incomplete_beta(static_cast<double>(k),
                                     static_cast<double>(n - k + 1), p);
}

double majority_probability(std::uint64_t n_odd, double p) {
  require(n_odd % 2 == 1, ErrorCode::InvalidArgument,
          "majority vote needs an odd trial count");
  return binomial_tail(n_odd, n_odd / 2 + 1, p);
}

std::uint64_t majority_vote_shots(double p, double confidence) {
  require(p > 0.5 && p <= 1.0, ErrorCode::InvalidArgument,
          "per-shot success must exceed 1/2 for a majority vote to converge");
  require(confidence > 0.0 && confidence < 1.0, ErrorCode::InvalidArgument,
          "confidence must lie in (0, 1)");
  if (majority_probability(1, p) >= confidence) return 1;
  // Gallop to an upper bracket, then bisect over odd counts.
  std::uint64_t lo = 1;
  std::uint64_t hi = 3;
  while (majority_probability(hi, p) < confidence) {
    lo = hi;
    hi = hi * 2 + 1;
    require(hi < (std::uint64_t{1} << 40), ErrorCode::NumericError,
            "majority vote shot search exceeded 2^40 trials");
  }
  while (hi - lo > 2) {
    std::uint64_t mid = lo + (hi - lo) / 2;
    if (mid % 2 == 0) ++mid;
    if (mid >= hi) mid -= 2;
    if (majority_probability(mid, p) >= confidence) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

LinearFit linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorCode::InvalidArgument,
          "linear fit needs >= 2 matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
    syy += y[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  require(std::abs(denom) > 0.0, ErrorCode::NumericError,
          "degenerate abscissa in linear fit");
  LinearFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0;
  const double mean_y = sy / n;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.slope * x[i] + fit.intercept;
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

double percentile_nearest_rank(std::vector<double> values, double pct) {
  require(!values.empty(), ErrorCode::InvalidArgument,
          "percentile of empty sample");
  require(pct >= 0.0 && pct <= 100.0, ErrorCode::InvalidArgument,
          "percentile must lie in [0, 100]");
  std::sort(values.begin(), values.end());
  if (pct <= 0.0) return values.front();
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(pct / 100.0 * static_cast<double>(values.size())));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace sqdaa
