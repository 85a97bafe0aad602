// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sqdaa/amplitude.hpp"
#include "sqdaa/pauli.hpp"

namespace sqdaa {

/// Clifford+T synthesis budget for a batch of arbitrary single-qubit
/// rotations; t_per_rotation = ceil(1.15 log2(n_rot/eps_tot) + 9.2).
struct SynthesisBudget {
  std::uint64_t n_rotations = 0;
  double eps_tot = 0.0;
  std::uint64_t t_per_rotation = 0;
};

/// T-gates to synthesize each of n_rot rotations with total error eps_tot.
std::uint64_t sk_tcount(std::uint64_t n_rot, double eps_tot);

SynthesisBudget make_synthesis_budget(std::uint64_t n_rot, double eps_tot);

struct GateCounts {
  std::uint64_t rotations = 0;
  std::uint64_t rotation_depth = 0;
};

/// Rotation count/depth of the layered orbital-rotation + diagonal-Coulomb
/// ansatz: per layer 2(n + n(n/2-1)) + n + 3(n/2)(n-1) rotations at depth
/// 2(1 + n/2) + 1 + 3n. Requires even n.
GateCounts ucj_counts(int num_qubits, int layers);

/// Rotation count of the discretized adiabatic sweep: reduced term count
/// times reps times steps; nothing parallelizes, so depth equals the count.
GateCounts asp_counts(const PauliHamiltonian& h, std::uint64_t reps,
                      std::uint64_t steps);

/// 4n - 6 T-gates per n-qubit multi-controlled NOT (n = controls + target).
std::uint64_t cnnot_tcount(int n);

/// Resolved state-preparation cost model feeding the pipeline reports.
struct PrepSpec {
  std::string name;          // "ucj(n,L)" or "asp(reps,steps)"
  GateCounts rotations;
  double eps_tot = 1e-4;

  std::uint64_t t_count() const;
  std::uint64_t t_depth() const;
};

PrepSpec make_ucj_prep(int num_qubits, int layers, double eps_tot);
PrepSpec make_asp_prep(const PauliHamiltonian& h, std::uint64_t reps,
                       std::uint64_t steps, double eps_tot);

struct ResourceReport {
  std::string pipeline;
  std::uint64_t t_count_deepest = 0;
  std::uint64_t t_depth_deepest = 0;
  double t_count_total = 0.0;
  double t_depth_total = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t ancillas = 0;
  std::map<std::string, double> parameters;
  std::map<std::string, std::uint64_t> ancilla_registers;

  std::string to_json() const;
};

/// Power-law model Delta_E = C * dtau^p of the second-order product-formula
/// energy error, fitted on log-log samples.
struct TrotterErrorModel {
  double c_gs = 0.0;      // average of dE/dtau^2 over the sample grid
  double exponent = 0.0;  // fitted p
  double r_squared = 0.0;
  bool exact = false;         // error at machine precision for every dtau
  bool exponent_in_range = false;  // p within [1.8, 2.2]
  bool fit_ok = false;             // R^2 >= 0.9
  std::vector<std::pair<double, double>> samples;  // (dtau, dE)

  std::string to_json() const;
};

/// Builds the second-order product-formula unitary densely (n <= 10),
/// extracts the effective ground energy from the eigenphase of the
/// eigenvector with maximal overlap with the true ground state, and fits
/// the power law over the dtau grid.
TrotterErrorModel fit_trotter_constant(const PauliHamiltonian& h,
                                       const std::vector<double>& dtau_grid,
                                       double total_time);

struct ExponentialFit {
  double a = 0.0;
  double b = 0.0;
  double r_squared = 0.0;
};

/// Fits f(x) = a e^{bx} through (x, value) pairs (log-linear least squares),
/// used to extrapolate error constants across system sizes.
ExponentialFit fit_exponential(const std::vector<std::pair<double, double>>& xy);

/// Smallest odd shot count for which the phase-readout majority vote
/// succeeds with the given confidence; per-shot success (8/pi^2) * overlap.
std::uint64_t phase_majority_shots(double c_gs_overlap, double confidence);

/// Phase estimation on the product-formula unitary: minimizes
/// 4L' N_SK(dE_SK, dE_TS) * 2 pi sqrt(C_GS) / (dE_iqpe sqrt(dE_TS)) over
/// error splits dE_TS + dE_iqpe + dE_SK <= budget (multi-start pattern
/// search, audited on a logarithmic grid). Initial-state cost is added once
/// per phase bit.
ResourceReport iqpe_trotter_optimize(const PauliHamiltonian& h, double c_gs,
                                     double delta_e_budget,
                                     double c_gs_overlap,
                                     std::uint64_t prep_t_count = 0,
                                     std::uint64_t prep_t_depth = 0,
                                     double confidence = 0.99);

/// Block-encoding walk-operator counts: mu-bit coefficient loading,
/// select/prepare T costs, reflection cost, 4 pi lambda / dE repetitions.
ResourceReport iqpe_qubitization_counts(const PauliHamiltonian& h,
                                        double delta_e_budget,
                                        double c_gs_overlap,
                                        std::uint64_t prep_t_count = 0,
                                        std::uint64_t prep_t_depth = 0,
                                        double confidence = 0.99);

std::uint64_t qubitization_mu(double lambda, double delta_e);

/// Controlled select cost 4L - 4 (unary iteration), L >= 2.
std::uint64_t qubitization_select_tcount(std::uint64_t l);

/// Controlled prepare cost 4(L + mu) + 2k + 10 ceil(log2 J) with L = 2^k J,
/// J odd.
std::uint64_t qubitization_prepare_tcount(std::uint64_t l, std::uint64_t mu);

namespace detail {
/// Cost of one error split (de_ts, de_iqpe, de_sk) in the phase-estimation
/// optimizer: 4 L' ceil(N_SK) * repetitions.
double iqpe_trotter_cost(double l_reduced, double c_gs, double de_ts,
                         double de_iqpe, double de_sk);
double iqpe_trotter_repetitions(double c_gs, double de_iqpe, double de_ts);
}  // namespace detail

struct RunResourceInput {
  /// Per-iteration circuit shape: step count, set size and shots, in
  /// execution order (probes included); s=0 entries are bare preparations.
  struct Entry {
    std::uint64_t steps = 0;
    std::uint64_t set_size = 0;
    std::uint64_t shots = 0;
  };
  std::vector<Entry> entries;
  int num_qubits = 0;
  std::string pipeline;  // "sqd" or "sqd-aa"
};

/// Folds a run's per-iteration circuits with a preparation model into
/// deepest-circuit and total T costs.
ResourceReport pipeline_report(const RunResourceInput& run,
                               const PrepSpec& prep,
                               bool include_zero_reflection = true);

}  // namespace sqdaa
