// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqdaa/statevector.hpp"

namespace sqdaa {

/// Parameters of a model probability distribution (the infinite-size
/// closed-form calculators only consult kind and decay parameter; num_qubits
/// matters when materializing the state).
struct DistributionSpec {
  ModelKind kind = ModelKind::Exponential;
  double parameter = 1.0;  // alpha (> 0), gamma (> 1), or m (step width)
  int num_qubits = 10;

  void validate() const;
};

/// Riemann zeta via direct summation with an Euler-Maclaurin tail, accurate
/// to ~1e-13 for gamma > 1.
double riemann_zeta(double gamma);

/// H_k(gamma) = sum_{l=0}^{k-1} (l+1)^{-gamma}.
double harmonic_number(std::uint64_t k, double gamma);

/// Closed-form step count s_{k+1} for reducing the k+1 most probable
/// bitstrings: exponential floor(pi sqrt(e^{alpha(k+1)})/4), algebraic
/// floor(pi sqrt(zeta)/(4 sqrt(zeta - H_{k+1}))), step
/// floor(pi / (4 arcsin(sqrt((m-k-1)/m)))).
std::uint64_t analytic_steps(const DistributionSpec& spec, std::uint64_t k);

/// Shot count (1/p_{m-1}) ln(m/p_fail) collecting the m most probable
/// bitstrings by direct sampling with failure probability p_fail.
double qtot_sqd(const DistributionSpec& spec, std::uint64_t m, double p_fail);

struct QtotSqdaaResult {
  double q_tot = 0.0;
  std::uint64_t m_star = 0;
  double q_aa = 0.0;
  double q_dir = 0.0;
  /// Step kind: the m(1+pi) closed upper bound reported beside the exact sum.
  double q_tot_bound = 0.0;
  /// Algebraic kind: direct tail from the intermediate (pre-simplification)
  /// expression, kept as a comparison mode.
  double q_dir_intermediate = 0.0;
};

/// Query complexity of the amplified schedule. Exponential: m* = m with the
/// geometric-series closed form. Algebraic: m* minimizes the amplification +
/// direct-tail sum over [1, m]. Step: exact floor-sum of 2s_k+1 plus the
/// closed bound.
QtotSqdaaResult qtot_sqdaa(const DistributionSpec& spec, std::uint64_t m,
                           std::uint64_t n_shots_aa_it, double p_fail);

struct ComplexityCurvePoint {
  std::uint64_t m = 0;
  double q_tot_sqd = 0.0;
  double q_tot_sqdaa = 0.0;
  double q_aa = 0.0;
  double q_dir = 0.0;
  std::uint64_t m_star = 0;
  double ratio = 0.0;
};

struct ComplexityCurve {
  std::vector<ComplexityCurvePoint> points;
  std::string to_csv() const;
};

ComplexityCurve ratio_curve(const DistributionSpec& spec, std::uint64_t m_min,
                            std::uint64_t m_max, std::uint64_t n_shots_aa_it,
                            double p_fail);

namespace detail {
/// Real-valued m variants used for slope/asymptotics checks.
double qtot_sqd_real(const DistributionSpec& spec, double m, double p_fail);
double qtot_sqdaa_exponential_real(double alpha, double m, double n_shots);
}  // namespace detail

}  // namespace sqdaa
