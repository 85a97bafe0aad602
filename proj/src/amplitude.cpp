// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

namespace sqdaa {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_members(const StateVector& state,
                   const std::vector<Bitstring>& members) {
  std::set<std::uint64_t> seen;
  for (const auto& m : members) {
    require(m.num_qubits == state.num_qubits(), ErrorCode::DimensionMismatch,
            "reduction-set member qubit count does not match state");
    require(seen.insert(m.value).second, ErrorCode::InvalidArgument,
            "reduction-set members must be distinct");
  }
}

}  // namespace

ReductionSet ReductionSet::from_state(const StateVector& state,
                                      std::vector<Bitstring> members) {
  check_members(state, members);
  double r = 0.0;
  for (const auto& m : members) r += state.probability(m.value);
  require(r < 1.0, ErrorCode::InvalidArgument,
          "reduction set covers the full state (R = 1): nothing to amplify");
  ReductionSet set;
  set.members = std::move(members);
  set.reduced_probability = r;
  return set;
}

ReductionSet ReductionSet::from_estimate(std::vector<Bitstring> members,
                                         double r) {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument,
          "reduced probability must lie in [0, 1)");
  std::set<std::uint64_t> seen;
  for (const auto& m : members) {
    require(seen.insert(m.value).second, ErrorCode::InvalidArgument,
            "reduction-set members must be distinct");
  }
  ReductionSet set;
  set.members = std::move(members);
  set.reduced_probability = r;
  return set;
}

std::vector<std::uint64_t> ReductionSet::member_values() const {
  std::vector<std::uint64_t> v;
  v.reserve(members.size());
  for (const auto& m : members) v.push_back(m.value);
  return v;
}

double theta_from_r(double r) {
  require(r >= 0.0 && r < 1.0, ErrorCode::InvalidArgument,
          "R must lie in [0, 1)");
  return std::acos(std::sqrt(r));
}

std::uint64_t ideal_steps(double theta, double f_target) {
  require(theta > 0.0 && theta <= kPi / 2.0 + 1e-15, ErrorCode::InvalidArgument,
          "theta must lie in (0, pi/2]");
  require(f_target > 0.0 && f_target <= 1.0, ErrorCode::InvalidArgument,
          "target fidelity must lie in (0, 1]");
  const double s = std::floor(std::asin(std::sqrt(f_target)) / (2.0 * theta));
  return static_cast<std::uint64_t>(s);
}

namespace detail {

void standard_aa_inplace(std::vector<Complex>& amps,
                         const std::vector<Complex>& psi0,
                         const std::vector<std::uint64_t>& members,
                         std::uint64_t steps) {
  const std::size_t dim = amps.size();
  for (std::uint64_t step = 0; step < steps; ++step) {
    // S_P = -(I - 2P): members keep sign, everything else flips; the global
    // flip is folded into the trailing negation of A = -S_Psi S_P.
    for (auto& a : amps) a = -a;
    for (std::uint64_t m : members) amps[m] = -amps[m];
    // S_Psi = I - 2|psi0><psi0|
    Complex overlap{0, 0};
    for (std::size_t i = 0; i < dim; ++i) {
      overlap += std::conj(psi0[i]) * amps[i];
    }
    const Complex twice = 2.0 * overlap;
    for (std::size_t i = 0; i < dim; ++i) {
      amps[i] = -(amps[i] - twice * psi0[i]);
    }
  }
  if (steps > 0) {
    // The exact map is unitary; strip the accumulated rounding drift, which
    // grows linearly in the step count and reaches ~1e-10 near 10^5 steps.
    double norm_sq = 0.0;
    for (const auto& a : amps) norm_sq += std::norm(a);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= inv;
  }
}

}  // namespace detail

StateVector apply_standard_aa(const StateVector& state0,
                              const ReductionSet& set, std::uint64_t steps) {
  check_members(state0, set.members);
  double exact_r = 0.0;
  for (const auto& m : set.members) exact_r += state0.probability(m.value);
  require(exact_r < 1.0 - 1e-14, ErrorCode::InvalidArgument,
          "reduction set covers all nonzero amplitudes (R = 1)");
  std::vector<Complex> amps = state0.amplitudes();
  detail::standard_aa_inplace(amps, state0.amplitudes(), set.member_values(),
                              steps);
  return StateVector(state0.num_qubits(), std::move(amps));
}

double chebyshev(double nu, double x) {
  if (x > 1.0) return std::cosh(nu * std::acosh(x));
  require(x >= -1.0, ErrorCode::InvalidArgument,
          "chebyshev argument below -1 unsupported");
  return std::cos(nu * std::acos(x));
}

FixedPointAngles fixed_point_angles(std::uint64_t steps, double delta) {
  require(steps >= 1, ErrorCode::InvalidArgument, "steps must be >= 1");
  require(delta > 0.0 && delta <= 1.0, ErrorCode::InvalidArgument,
          "delta must lie in (0, 1]");
  const double queries = 2.0 * static_cast<double>(steps) + 1.0;
  const double gamma_inv = std::cosh(std::acosh(1.0 / delta) / queries);
  const double w_sq = 1.0 - 1.0 / (gamma_inv * gamma_inv);
  const double w = w_sq > 0.0 ? std::sqrt(w_sq) : 0.0;
  FixedPointAngles angles;
  angles.alphas.resize(steps);
  angles.betas.resize(steps);
  for (std::uint64_t j = 1; j <= steps; ++j) {
    const double t = std::tan(2.0 * kPi * static_cast<double>(j) / queries);
    // acot on the principal branch (0, pi)
    angles.alphas[j - 1] = 2.0 * std::atan2(1.0, t * w);
  }
  for (std::uint64_t j = 1; j <= steps; ++j) {
    angles.betas[j - 1] = angles.alphas[steps - j];
  }
  return angles;
}

std::uint64_t fixed_point_min_steps(double delta, double target_overlap) {
  require(delta > 0.0 && delta <= 1.0, ErrorCode::InvalidArgument,
          "delta must lie in (0, 1]");
  require(target_overlap > 0.0 && target_overlap <= 1.0,
          ErrorCode::InvalidArgument, "overlap must lie in (0, 1]");
  const double bound = std::log(2.0 / delta) / (2.0 * target_overlap);
  return std::max<std::uint64_t>(
      1, static_cast<std::uint64_t>(std::ceil(bound)));
}

double fixed_point_overlap_bound(std::uint64_t steps, double delta,
                                 double f0) {
  require(f0 >= 0.0 && f0 <= 1.0, ErrorCode::InvalidArgument,
          "initial overlap must lie in [0, 1]");
  const double queries = 2.0 * static_cast<double>(steps) + 1.0;
  const double inner = chebyshev(1.0 / queries, 1.0 / delta) *
                       std::sqrt(std::max(0.0, 1.0 - f0));
  const double t = chebyshev(queries, inner);
  return 1.0 - delta * delta * t * t;
}

StateVector apply_fixed_point_aa(const StateVector& state0,
                                 const ReductionSet& set, std::uint64_t steps,
                                 double delta) {
  check_members(state0, set.members);
  double exact_r = 0.0;
  for (const auto& m : set.members) exact_r += state0.probability(m.value);
  require(exact_r < 1.0 - 1e-14, ErrorCode::InvalidArgument,
          "reduction set covers all nonzero amplitudes (R = 1)");
  if (steps == 0) return state0;
  const FixedPointAngles angles = fixed_point_angles(steps, delta);
  const auto members = set.member_values();
  const auto& psi0 = state0.amplitudes();
  std::vector<Complex> amps = psi0;
  const std::size_t dim = amps.size();
  for (std::uint64_t j = 0; j < steps; ++j) {
    const Complex phase_b = std::exp(Complex{0, angles.betas[j]});
    for (std::uint64_t m : members) amps[m] *= phase_b;
    Complex overlap{0, 0};
    for (std::size_t i = 0; i < dim; ++i) {
      overlap += std::conj(psi0[i]) * amps[i];
    }
    const Complex scale =
        (Complex{1, 0} - std::exp(Complex{0, -angles.alphas[j]})) * overlap;
    for (std::size_t i = 0; i < dim; ++i) {
      amps[i] = -(amps[i] - scale * psi0[i]);
    }
  }
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  return StateVector(state0.num_qubits(), std::move(amps));
}

CircuitTCost aa_circuit_tcost(int num_qubits, std::uint64_t set_size,
                              std::uint64_t steps, std::uint64_t prep_t_count,
                              std::uint64_t prep_t_depth,
                              bool include_zero_reflection) {
  require(num_qubits >= 2, ErrorCode::InvalidArgument,
          "multi-controlled NOT cost needs n >= 2");
  require(set_size >= 1, ErrorCode::InvalidArgument, "set size must be >= 1");
  const std::uint64_t cnnot =
      4ull * static_cast<std::uint64_t>(num_qubits) - 6ull;
  const std::uint64_t reflections =
      steps * set_size + (include_zero_reflection ? steps : 0);
  CircuitTCost cost;
  cost.t_count = (2 * steps + 1) * prep_t_count + reflections * cnnot;
  cost.t_depth = (2 * steps + 1) * prep_t_depth + reflections * cnnot;
  return cost;
}

std::uint64_t AAPlan::q_tot_aa() const {
  std::uint64_t q = 0;
  for (const auto& e : entries) q += e.shots * e.queries;
  return q;
}

std::uint64_t AAPlan::q_tot_dir() const {
  return direct_shots * (2 * direct_steps + 1);
}

std::uint64_t AAPlan::shots_tot() const {
  std::uint64_t s = direct_shots;
  for (const auto& e : entries) s += e.shots;
  return s;
}

std::string AAPlan::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries) {
    j["entries"].push_back({{"iteration", e.iteration},
                            {"steps", e.steps},
                            {"queries", e.queries},
                            {"shots", e.shots},
                            {"set_size", e.set_size},
                            {"probe", e.probe}});
  }
  j["direct_shots"] = direct_shots;
  j["direct_steps"] = direct_steps;
  j["q_tot_aa"] = q_tot_aa();
  j["q_tot_dir"] = q_tot_dir();
  j["q_tot"] = q_tot();
  j["shots_tot"] = shots_tot();
  return j.dump(2);
}

}  // namespace sqdaa
