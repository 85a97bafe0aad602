// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/analytics.hpp"

#include <cmath>
#include <cstdio>

namespace sqdaa {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::uint64_t step_width(const DistributionSpec& spec) {
  return static_cast<std::uint64_t>(spec.parameter);
}

}  // namespace

void DistributionSpec::validate() const {
  require(num_qubits >= 1 && num_qubits <= 63, ErrorCode::InvalidArgument,
          "qubit count must be in [1, 63]");
  switch (kind) {
    case ModelKind::Exponential:
      require(parameter > 0.0, ErrorCode::InvalidArgument,
              "exponential decay rate must be positive");
      break;
    case ModelKind::Algebraic:
      require(parameter > 1.0, ErrorCode::InvalidArgument,
              "algebraic decay exponent must exceed 1 (zeta convergence)");
      break;
    case ModelKind::Step:
      require(parameter >= 1.0 && parameter == std::floor(parameter),
              ErrorCode::InvalidArgument,
              "step width must be a positive integer");
      require(num_qubits >= 63 ||
                  parameter <= static_cast<double>(std::uint64_t{1} << num_qubits),
              ErrorCode::InvalidArgument, "step width exceeds 2^n");
      break;
  }
}

double riemann_zeta(double gamma) {
  require(gamma > 1.0, ErrorCode::InvalidArgument,
          "zeta requires gamma > 1");
  constexpr std::uint64_t kCutoff = 100000;
  double s = 0.0;
  for (std::uint64_t l = kCutoff; l >= 1; --l) {
    s += std::pow(static_cast<double>(l), -gamma);
  }
  // Euler-Maclaurin tail from M = kCutoff + 1 on.
  const double m = static_cast<double>(kCutoff);
  const double tail = std::pow(m, 1.0 - gamma) / (gamma - 1.0) -
                      0.5 * std::pow(m, -gamma) +
                      gamma / 12.0 * std::pow(m, -gamma - 1.0) -
                      gamma * (gamma + 1.0) * (gamma + 2.0) / 720.0 *
                          std::pow(m, -gamma - 3.0);
  return s + tail;
}

double harmonic_number(std::uint64_t k, double gamma) {
  double s = 0.0;
  for (std::uint64_t l = k; l >= 1; --l) {
    s += std::pow(static_cast<double>(l), -gamma);
  }
  return s;
}

std::uint64_t analytic_steps(const DistributionSpec& spec, std::uint64_t k) {
  spec.validate();
  switch (spec.kind) {
    case ModelKind::Exponential: {
      const double s = std::floor(
          kPi * std::sqrt(std::exp(spec.parameter * static_cast<double>(k + 1))) /
          4.0);
      return static_cast<std::uint64_t>(s);
    }
    case ModelKind::Algebraic: {
      const double zeta = riemann_zeta(spec.parameter);
      const double hk = harmonic_number(k + 1, spec.parameter);
      require(zeta - hk > 0.0, ErrorCode::InvalidArgument,
              "no residual tail mass at this iteration");
      return static_cast<std::uint64_t>(
          std::floor(kPi * std::sqrt(zeta) / (4.0 * std::sqrt(zeta - hk))));
    }
    case ModelKind::Step: {
      const std::uint64_t m = step_width(spec);
      require(k + 1 < m, ErrorCode::InvalidArgument,
              "step distribution exhausted: k must satisfy k < m - 1");
      const double arg = std::sqrt(static_cast<double>(m - k - 1) /
                                   static_cast<double>(m));
      return static_cast<std::uint64_t>(
          std::floor(kPi / (4.0 * std::asin(arg))));
    }
  }
  detail::fail(ErrorCode::InvalidArgument, "unknown distribution kind");
}

namespace detail {

double qtot_sqd_real(const DistributionSpec& spec, double m, double p_fail) {
  spec.validate();
  require(m >= 1.0, ErrorCode::InvalidArgument, "m must be >= 1");
  require(p_fail > 0.0 && p_fail < 1.0, ErrorCode::InvalidArgument,
          "p_fail must lie in (0, 1)");
  const double log_term = std::log(m / p_fail);
  switch (spec.kind) {
    case ModelKind::Exponential:
      return std::exp(spec.parameter * (m - 1.0)) /
             (1.0 - std::exp(-spec.parameter)) * log_term;
    case ModelKind::Algebraic:
      return std::pow(m, spec.parameter) * riemann_zeta(spec.parameter) *
             log_term;
    case ModelKind::Step:
      require(m <= spec.parameter, ErrorCode::InvalidArgument,
              "cannot collect more than m bitstrings from a step state");
      return m * log_term;
  }
  detail::fail(ErrorCode::InvalidArgument, "unknown distribution kind");
}

double qtot_sqdaa_exponential_real(double alpha, double m, double n_shots) {
  return n_shots *
         (m + kPi / 2.0 * (std::sqrt(std::exp(alpha * m)) - 1.0) /
                  (std::exp(alpha / 2.0) - 1.0));
}

}  // namespace detail

double qtot_sqd(const DistributionSpec& spec, std::uint64_t m, double p_fail) {
  return detail::qtot_sqd_real(spec, static_cast<double>(m), p_fail);
}

QtotSqdaaResult qtot_sqdaa(const DistributionSpec& spec, std::uint64_t m,
                           std::uint64_t n_shots_aa_it, double p_fail) {
  spec.validate();
  require(m >= 1, ErrorCode::InvalidArgument, "m must be >= 1");
  require(n_shots_aa_it >= 1, ErrorCode::InvalidArgument,
          "per-iteration shot count must be >= 1");
  require(p_fail > 0.0 && p_fail < 1.0, ErrorCode::InvalidArgument,
          "p_fail must lie in (0, 1)");
  const double n = static_cast<double>(n_shots_aa_it);
  QtotSqdaaResult result;
  switch (spec.kind) {
    case ModelKind::Exponential: {
      result.m_star = m;
      result.q_aa = detail::qtot_sqdaa_exponential_real(
          spec.parameter, static_cast<double>(m), n);
      result.q_dir = 0.0;
      result.q_tot = result.q_aa;
      return result;
    }
    case ModelKind::Algebraic: {
      const double gamma = spec.parameter;
      const double zeta = riemann_zeta(gamma);
      // Prefix sums of the amplification series over candidate m*.
      double best = 0.0;
      std::uint64_t best_mstar = 0;
      double best_aa = 0.0, best_dir = 0.0, best_dir_intermediate = 0.0;
      double series = 0.0;  // sum_{k=0}^{m*-1} sqrt(zeta/(zeta - H_k))
      for (std::uint64_t mstar = 1; mstar <= m; ++mstar) {
        const double h_prev = harmonic_number(mstar - 1, gamma);
        require(zeta - h_prev > 0.0, ErrorCode::NumericError,
                "tail mass vanished in algebraic series");
        series += std::sqrt(zeta / (zeta - h_prev));
        const double q_aa =
            n * (static_cast<double>(mstar) + kPi / 2.0 * series);
        double q_dir = 0.0;
        double q_dir_intermediate = 0.0;
        if (mstar < m) {
          const double h_last = harmonic_number(mstar - 1, gamma);
          const double log_term =
              std::log(static_cast<double>(m - mstar) / p_fail);
          q_dir = std::pow(static_cast<double>(m), gamma) * kPi / 2.0 *
                  std::sqrt(zeta) * std::sqrt(zeta - h_last) * log_term;
          const double q_last =
              mstar >= 2 ? 2.0 * static_cast<double>(
                                     analytic_steps(spec, mstar - 2)) + 1.0
                         : 1.0;
          q_dir_intermediate = std::pow(static_cast<double>(m), gamma) *
                               (zeta - h_last) * log_term * q_last;
        }
        const double q_total = q_aa + q_dir;
        if (best_mstar == 0 || q_total < best) {
          best = q_total;
          best_mstar = mstar;
          best_aa = q_aa;
          best_dir = q_dir;
          best_dir_intermediate = q_dir_intermediate;
        }
      }
      result.q_tot = best;
      result.m_star = best_mstar;
      result.q_aa = best_aa;
      result.q_dir = best_dir;
      result.q_dir_intermediate = best_dir_intermediate;
      return result;
    }
    case ModelKind::Step: {
      const std::uint64_t width = step_width(spec);
      require(m <= width, ErrorCode::InvalidArgument,
              "cannot collect more than m bitstrings from a step state");
      // Exact floor-sum of per-iteration queries, s_0 = 0.
      double q = 1.0;
      for (std::uint64_t k = 1; k < m; ++k) {
        q += 2.0 * static_cast<double>(analytic_steps(spec, k - 1)) + 1.0;
      }
      result.m_star = m;
      result.q_aa = n * q;
      result.q_dir = 0.0;
      result.q_tot = result.q_aa;
      result.q_tot_bound =
          n * static_cast<double>(width) * (1.0 + kPi);
      return result;
    }
  }
  detail::fail(ErrorCode::InvalidArgument, "unknown distribution kind");
}

std::string ComplexityCurve::to_csv() const {
  std::string out = "m,Qtot_sqd,Qtot_sqdaa,Qtot_aa,Qtot_dir,m_star,ratio\n";
  for (const auto& p : points) {
    out += std::to_string(p.m) + ',' + format_double(p.q_tot_sqd) + ',' +
           format_double(p.q_tot_sqdaa) + ',' + format_double(p.q_aa) + ',' +
           format_double(p.q_dir) + ',' + std::to_string(p.m_star) + ',' +
           format_double(p.ratio) + '\n';
  }
  return out;
}

ComplexityCurve ratio_curve(const DistributionSpec& spec, std::uint64_t m_min,
                            std::uint64_t m_max, std::uint64_t n_shots_aa_it,
                            double p_fail) {
  require(m_min >= 1 && m_min <= m_max, ErrorCode::InvalidArgument,
          "invalid m range");
  ComplexityCurve curve;
  curve.points.reserve(m_max - m_min + 1);
  for (std::uint64_t m = m_min; m <= m_max; ++m) {
    ComplexityCurvePoint p;
    p.m = m;
    p.q_tot_sqd = qtot_sqd(spec, m, p_fail);
    const QtotSqdaaResult r = qtot_sqdaa(spec, m, n_shots_aa_it, p_fail);
    p.q_tot_sqdaa = r.q_tot;
    p.q_aa = r.q_aa;
    p.q_dir = r.q_dir;
    p.m_star = r.m_star;
    p.ratio = p.q_tot_sqd / p.q_tot_sqdaa;
    curve.points.push_back(p);
  }
  return curve;
}

}  // namespace sqdaa
