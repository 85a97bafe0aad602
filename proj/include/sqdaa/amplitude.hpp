// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqdaa/statevector.hpp"

namespace sqdaa {

/// The ordered set of already-measured bitstrings whose probabilities the
/// amplification steps suppress, with their cumulative probability in the
/// prepared state (exact or estimated).
struct ReductionSet {
  std::vector<Bitstring> members;
  double reduced_probability = 0.0;  // R, in [0, 1)

  static ReductionSet from_state(const StateVector& state,
                                 std::vector<Bitstring> members);
  static ReductionSet from_estimate(std::vector<Bitstring> members, double r);

  std::vector<std::uint64_t> member_values() const;
};

/// theta = arccos(sqrt(R)), in (0, pi/2].
double theta_from_r(double r);

/// Step count targeting squared overlap f_target with the ideal target state:
/// s = floor(arcsin(sqrt(f_target)) / (2 theta)). f_target = 1 reduces to
/// floor(pi / (4 theta)).
std::uint64_t ideal_steps(double theta, double f_target);

/// s applications of A = -S_Psi S_P on the prepared state, as exact
/// statevector arithmetic. S_P = -(I - 2P) flips the phases of all basis
/// states outside the set; S_Psi = I - 2|Psi0><Psi0|. The weight outside the
/// set afterward is sin^2((2s+1) theta) exactly.
StateVector apply_standard_aa(const StateVector& state0,
                              const ReductionSet& set, std::uint64_t steps);

namespace detail {
/// In-place core shared by the drivers; `amps` must start as a copy of the
/// prepared state's amplitudes.
void standard_aa_inplace(std::vector<Complex>& amps,
                         const std::vector<Complex>& psi0,
                         const std::vector<std::uint64_t>& members,
                         std::uint64_t steps);
}  // namespace detail

/// Phase schedule for fixed-point amplification with s generalized steps
/// (2s+1 queries): alpha_j = 2 acot(tan(2 pi j / (2s+1)) sqrt(1 - g^2)) with
/// 1/g = cosh(arccosh(1/delta) / (2s+1)), beta_j = alpha_{s-j+1}. delta = 1
/// yields all angles pi, recovering standard amplification.
struct FixedPointAngles {
  std::vector<double> alphas;
  std::vector<double> betas;
};
FixedPointAngles fixed_point_angles(std::uint64_t steps, double delta);

/// Minimal step count guaranteeing target fidelity >= 1 - delta^2:
/// ceil(ln(2/delta) / (2 * target_overlap)), target_overlap = <phi_t|Psi0>.
std::uint64_t fixed_point_min_steps(double delta, double target_overlap);

/// Closed-form target fidelity after s fixed-point steps started from
/// squared overlap f0: 1 - delta^2 T_L(T_{1/L}(1/delta) sqrt(1-f0))^2 with
/// L = 2s+1 (Chebyshev, hyperbolic extension beyond |x| = 1).
double fixed_point_overlap_bound(std::uint64_t steps, double delta, double f0);

/// s generalized-reflection steps S_P(beta) = I - (1 - e^{i beta}) P,
/// S_Psi(alpha) = I - (1 - e^{-i alpha}) |Psi0><Psi0|, A = -S_Psi S_P, with
/// the fixed_point_angles schedule.
StateVector apply_fixed_point_aa(const StateVector& state0,
                                 const ReductionSet& set, std::uint64_t steps,
                                 double delta);

/// Chebyshev value T_nu(x) with the hyperbolic extension for x > 1.
double chebyshev(double nu, double x);

/// Symbolic gate cost of one amplification circuit: the preparation unitary
/// runs 2s+1 times, each step applies one multi-controlled NOT per set member
/// (4n-6 T-gates each) plus one |0>-reflection of the same cost class (the
/// latter optional via include_zero_reflection).
struct CircuitTCost {
  std::uint64_t t_count = 0;
  std::uint64_t t_depth = 0;
};
CircuitTCost aa_circuit_tcost(int num_qubits, std::uint64_t set_size,
                              std::uint64_t steps, std::uint64_t prep_t_count,
                              std::uint64_t prep_t_depth,
                              bool include_zero_reflection = true);

/// Per-iteration query accounting for a full run. Iteration entries cover
/// the amplification phase (including step-adaptation probes); the direct
/// phase is folded in through direct_shots at the final step count.
struct AAPlanEntry {
  std::uint64_t iteration = 0;
  std::uint64_t steps = 0;
  std::uint64_t queries = 0;  // 2*steps + 1
  std::uint64_t shots = 0;
  std::uint64_t set_size = 0;
  bool probe = false;
};

struct AAPlan {
  std::vector<AAPlanEntry> entries;
  std::uint64_t direct_shots = 0;
  std::uint64_t direct_steps = 0;  // step count of the state being measured

  std::uint64_t q_tot_aa() const;
  std::uint64_t q_tot_dir() const;
  std::uint64_t q_tot() const { return q_tot_aa() + q_tot_dir(); }
  std::uint64_t shots_tot() const;

  std::string to_json() const;
};

}  // namespace sqdaa
