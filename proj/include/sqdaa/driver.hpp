// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sqdaa/amplitude.hpp"
#include "sqdaa/statevector.hpp"
#include "sqdaa/subspace.hpp"

namespace sqdaa {

enum class StopMode {
  EnergyConvergence,  // stop when |E_{k-1} - E_k| <= epsilon
  ReferenceEnergy,    // stop when |E_k - reference| <= epsilon
  CollectTopM,        // stop once the m most probable bitstrings are ledgered
};

enum class Termination {
  EnergyConverged,
  FlatnessThenEnergyConverged,
  TargetReached,
  MaxIterations,
};

const char* stop_mode_name(StopMode mode);
const char* termination_name(Termination t);

struct DriverConfig {
  std::uint64_t shots_aa_it = 100;  // shots per amplification iteration
  std::uint64_t direct_batch = 0;   // 0 -> min(10 * shots_aa_it, 10000)
  double f_target = 0.8;            // target fidelity for step selection
  double tau = 0.4;                 // flatness threshold
  double epsilon = 1.6e-3;          // energy convergence threshold (Ha)
  std::uint64_t max_iterations = 1000;
  std::uint64_t seed = 0;
  double reference_energy = std::numeric_limits<double>::quiet_NaN();
  StopMode stop_mode = StopMode::EnergyConvergence;
  std::uint64_t target_m = 0;  // CollectTopM only
  std::uint64_t max_total_shots = 1000000000000000000ull;
  std::uint32_t adapt_max_probes = 12;
  /// Deterministic validation mode: measurements return exact probabilities
  /// and each iteration ledgers only the most probable unseen bitstring.
  bool exact_sampling = false;

  std::uint64_t direct_batch_size() const;
  void validate() const;
};

/// Discovered bitstrings with their per-iteration estimates p^{(s_k)} and the
/// reconstructed initial probabilities p^{(0)}.
struct LedgerEntry {
  Bitstring z;
  double p_current = 0.0;  // estimate in the state that was measured
  double p_initial = 0.0;  // reconstructed estimate in |Psi_0>
  std::uint64_t iteration_added = 0;
  bool clamped = false;
};

struct SampleLedger {
  std::vector<LedgerEntry> entries;

  bool contains(std::uint64_t value) const;
  double sum_initial() const;
  double sum_current() const;
  std::vector<Bitstring> bitstrings() const;
};

/// p^{(0)} = p_new (1 - sum p_i^{(0)}) / (1 - sum p_i^{(s_k)}) over the
/// current ledger; the recursion base (empty ledger) returns p_new.
double reconstruct_p0(const SampleLedger& ledger, double p_new);

/// Relative difference of the last two reconstructed initial probabilities.
double flatness(const SampleLedger& ledger);

struct AdaptProbe {
  std::uint64_t steps = 0;
  double residual = 0.0;  // ledger-set probability mass in the probed state
  bool found_new = false;
};

struct AdaptResult {
  std::uint64_t steps = 0;  // accepted step count
  bool found_new = false;
  std::vector<AdaptProbe> probes;
  SampleResult last_sample;  // sample of the accepted state
};

/// Halving/doubling directional step search used when a measurement yields
/// only already-ledgered bitstrings. Direction is picked by whether the
/// ledger residual shrinks at s/2; the search ends at the first probe that
/// observes an unledgered bitstring or when the probe budget runs out
/// (found_new = false).
AdaptResult adapt_steps(const StateVector& state0, const ReductionSet& set,
                        std::uint64_t current_steps, double current_residual,
                        std::uint64_t probe_shots, std::uint64_t seed,
                        std::uint32_t max_probes = 12);

struct IterationTrace {
  std::uint64_t k = 0;
  std::uint64_t steps = 0;
  std::uint64_t queries = 0;
  std::string new_bitstrings;  // semicolon-joined, discovery order
  double p0_latest = std::numeric_limits<double>::quiet_NaN();
  double energy = std::numeric_limits<double>::quiet_NaN();
  double flatness = std::numeric_limits<double>::quiet_NaN();
  double energy_delta = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t shots = 0;
};

struct RunRecord {
  SampleLedger ledger;
  AAPlan plan;
  std::vector<SubspaceSolution> solutions;
  std::vector<IterationTrace> traces;
  Termination termination = Termination::MaxIterations;
  StopMode stop_mode = StopMode::EnergyConvergence;
  std::uint64_t seed = 0;
  double final_energy = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t q_tot = 0;
  std::uint64_t total_shots = 0;
  std::uint64_t clamp_events = 0;
  std::string diagnostic;

  std::string to_json() const;
  std::string trace_csv() const;
};

/// Algorithm driver: iterative measurement, probability reconstruction, step
/// selection, amplification, adaptation, flatness switch to direct sampling.
/// `h` may be null in CollectTopM mode (no diagnalization is performed).
RunRecord run_sqdaa(const PauliHamiltonian* h, const StateVector& state0,
                    const DriverConfig& cfg);

/// Direct-sampling baseline: repeated preparation + measurement with growing
/// batches, re-diagonalizing on all unique bitstrings seen. Q_tot equals the
/// shot count. CollectTopM mode simulates the stopping shot count exactly
/// through per-target geometric first-hit gaps.
RunRecord run_sqd(const PauliHamiltonian* h, const StateVector& state0,
                  const DriverConfig& cfg);

/// The m highest-probability basis states of `state`, ties broken by lower
/// index (the collection target of CollectTopM runs).
std::vector<std::uint64_t> top_m_targets(const StateVector& state,
                                         std::uint64_t m);

}  // namespace sqdaa
