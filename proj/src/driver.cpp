// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/driver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace sqdaa {

namespace {

constexpr double kClampCeiling = 1.0 - 1e-9;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// One measurement round: per-value observed weights (probability scale).
/// Sampled rounds carry Good-Turing discounted frequencies so the ledger's
/// reconstructed mass keeps a reserve for the unseen tail; exact rounds carry
/// the true probabilities.
struct Measurement {
  std::vector<std::pair<std::uint64_t, double>> by_weight;  // desc, ties low
  std::unordered_map<std::uint64_t, double> weight;
  std::uint64_t shots = 0;
  bool exact = false;
  double unseen = 0.0;  // Good-Turing missing-mass estimate

  double weight_of(std::uint64_t value) const {
    const auto it = weight.find(value);
    return it == weight.end() ? 0.0 : it->second;
  }
};

Measurement measure_counts(const SampleResult& sample) {
  Measurement m;
  m.shots = sample.shots;
  const double n = static_cast<double>(sample.shots);
  std::uint64_t singletons = 0;
  for (const auto& [value, count] : sample.counts) {
    if (count == 1) ++singletons;
  }
  // Good-Turing missing-mass reserve (floored at half a shot) keeps the
  // reconstructed initial probabilities from saturating at 1 when every
  // observed bitstring is ledgered in the same round. A single-support
  // sample is the one unambiguous basis-state signal, so no reserve there.
  const double reserve =
      sample.counts.size() <= 1
          ? static_cast<double>(singletons)
          : std::max(static_cast<double>(singletons), 0.5);
  m.unseen = std::min(reserve / n, 0.5);
  const double discount = 1.0 - m.unseen;
  m.by_weight.reserve(sample.counts.size());
  for (const auto& [value, count] : sample.counts) {
    const double w = static_cast<double>(count) / n * discount;
    m.weight.emplace(value, w);
    m.by_weight.push_back({value, w});
  }
  std::sort(m.by_weight.begin(), m.by_weight.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return m;
}

Measurement measure_exact(const StateVector& state, std::uint64_t shots) {
  Measurement m;
  m.shots = shots;
  m.exact = true;
  const auto probs = state.probabilities();
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    if (probs[v] > 0.0) {
      m.weight.emplace(v, probs[v]);
      m.by_weight.push_back({v, probs[v]});
    }
  }
  std::sort(m.by_weight.begin(), m.by_weight.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  return m;
}

struct LedgerIndex {
  std::unordered_set<std::uint64_t> values;

  bool contains(std::uint64_t v) const { return values.count(v) > 0; }
  void insert(std::uint64_t v) { values.insert(v); }
};

void update_current_estimates(SampleLedger& ledger, const Measurement& m) {
  for (auto& e : ledger.entries) {
    e.p_current = m.weight_of(e.z.value);  // zero count -> suppressed
  }
}

/// Appends a discovery with the probability recursion. Returns true when the
/// reconstructed cumulative sum saturated at 1 (nothing measurable remains);
/// noisy overshoots beyond 1 are clamped back to the 1 - 1e-9 ceiling.
bool ledger_discovery(SampleLedger& ledger, LedgerIndex& index,
                      std::uint64_t value, double weight, int num_qubits,
                      std::uint64_t iteration, std::uint64_t* clamp_events) {
  LedgerEntry entry;
  entry.z = Bitstring(value, num_qubits);
  entry.p_current = weight;
  entry.iteration_added = iteration;
  double p0 = reconstruct_p0(ledger, weight);
  const double prior = ledger.sum_initial();
  const bool saturated = prior + p0 >= 1.0 - 1e-12;
  if (prior + p0 >= 1.0 - 1e-12) {
    p0 = std::max(kClampCeiling - prior, 1e-12);
    entry.clamped = true;
    ++(*clamp_events);
  }
  entry.p_initial = p0;
  ledger.entries.push_back(entry);
  index.insert(value);
  return saturated;
}

std::vector<std::pair<std::uint64_t, double>> unledgered_discoveries(
    const Measurement& m, const LedgerIndex& index) {
  std::vector<std::pair<std::uint64_t, double>> out;
  if (m.exact) {
    // Deterministic validation mode: only the most probable unseen state.
    for (const auto& [value, weight] : m.by_weight) {
      if (!index.contains(value)) {
        out.push_back({value, weight});
        break;
      }
    }
    return out;
  }
  for (const auto& [value, weight] : m.by_weight) {
    if (!index.contains(value)) out.push_back({value, weight});
  }
  return out;
}

double ledger_residual(const Measurement& m, const LedgerIndex& index) {
  double r = 0.0;
  for (const auto& [value, weight] : m.by_weight) {
    if (index.contains(value)) r += weight;
  }
  return r;
}

struct ProbeOutcome {
  std::uint64_t steps = 0;
  StateVector state;
  SampleResult sample;
  Measurement measurement;
  double residual = 0.0;
  bool found_new = false;
};

ProbeOutcome probe_at(const StateVector& state0,
                      const std::vector<std::uint64_t>& members,
                      const LedgerIndex& index, std::uint64_t steps,
                      std::uint64_t shots, Rng& rng) {
  std::vector<Complex> amps = state0.amplitudes();
  detail::standard_aa_inplace(amps, state0.amplitudes(), members, steps);
  ProbeOutcome out{steps, StateVector(state0.num_qubits(), std::move(amps)),
                   {}, {}, 0.0, false};
  out.sample = sample(out.state, shots, rng);
  out.measurement = measure_counts(out.sample);
  out.residual = ledger_residual(out.measurement, index);
  for (const auto& [value, count] : out.sample.counts) {
    if (!index.contains(value)) {
      out.found_new = true;
      break;
    }
  }
  return out;
}

struct AdaptOutcome {
  bool found_new = false;
  std::vector<AdaptProbe> probes;
  std::optional<ProbeOutcome> accepted;
};

constexpr std::uint64_t kMaxPlannedSteps = std::uint64_t{1} << 20;

AdaptOutcome adapt_search(const StateVector& state0,
                          const std::vector<std::uint64_t>& members,
                          const LedgerIndex& index, std::uint64_t current_steps,
                          double current_residual, std::uint64_t probe_shots,
                          Rng& rng, std::uint32_t max_probes) {
  constexpr std::uint64_t kMaxProbeSteps = kMaxPlannedSteps;
  AdaptOutcome out;
  std::uint32_t budget = max_probes;
  std::uint32_t full_residual_probes = 0;
  auto run_probe = [&](std::uint64_t steps) {
    ProbeOutcome p =
        probe_at(state0, members, index, steps, probe_shots, rng);
    out.probes.push_back({p.steps, p.residual, p.found_new});
    if (p.residual >= 1.0 - 1e-12) {
      ++full_residual_probes;
    } else {
      full_residual_probes = 0;
    }
    --budget;
    return p;
  };

  const std::uint64_t half = std::max<std::uint64_t>(1, current_steps / 2);
  ProbeOutcome first = run_probe(half);
  if (first.found_new) {
    out.found_new = true;
    out.accepted = std::move(first);
    return out;
  }
  const bool halving = first.residual < current_residual;
  std::uint64_t steps =
      halving ? half : std::max<std::uint64_t>(1, current_steps);
  while (budget > 0) {
    std::uint64_t next;
    if (halving) {
      if (steps == 1) break;  // nowhere further down
      next = std::max<std::uint64_t>(1, steps / 2);
    } else {
      next = std::min(std::max<std::uint64_t>(1, steps * 2), kMaxProbeSteps);
      if (next == steps) break;  // doubling hit the cap
    }
    steps = next;
    ProbeOutcome p = run_probe(steps);
    if (p.found_new) {
      out.found_new = true;
      out.accepted = std::move(p);
      return out;
    }
    if (full_residual_probes >= 4) break;  // nothing outside the set at all
  }
  return out;
}

}  // namespace

const char* stop_mode_name(StopMode mode) {
  switch (mode) {
    case StopMode::EnergyConvergence:
      return "energy";
    case StopMode::ReferenceEnergy:
      return "reference";
    case StopMode::CollectTopM:
      return "collect-m";
  }
  return "?";
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::EnergyConverged:
      return "energy-converged";
    case Termination::FlatnessThenEnergyConverged:
      return "flatness-then-energy-converged";
    case Termination::TargetReached:
      return "target-error-reached";
    case Termination::MaxIterations:
      return "max-iterations";
  }
  return "?";
}

std::uint64_t DriverConfig::direct_batch_size() const {
  if (direct_batch > 0) return direct_batch;
  return std::min<std::uint64_t>(shots_aa_it * 10, 10000);
}

void DriverConfig::validate() const {
  require(shots_aa_it >= 1, ErrorCode::InvalidArgument,
          "shots per iteration must be >= 1");
  require(f_target > 0.0 && f_target <= 1.0, ErrorCode::InvalidArgument,
          "target fidelity must lie in (0, 1]");
  require(tau > 0.0, ErrorCode::InvalidArgument,
          "flatness threshold must be positive");
  require(epsilon > 0.0, ErrorCode::InvalidArgument,
          "energy threshold must be positive");
  require(max_iterations >= 1, ErrorCode::InvalidArgument,
          "max iterations must be >= 1");
  if (stop_mode == StopMode::CollectTopM) {
    require(target_m >= 1, ErrorCode::InvalidArgument,
            "collect-m mode needs target_m >= 1");
  }
  if (stop_mode == StopMode::ReferenceEnergy) {
    require(std::isfinite(reference_energy), ErrorCode::InvalidArgument,
            "reference mode needs a finite reference energy");
  }
}

bool SampleLedger::contains(std::uint64_t value) const {
  for (const auto& e : entries) {
    if (e.z.value == value) return true;
  }
  return false;
}

double SampleLedger::sum_initial() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.p_initial;
  return s;
}

double SampleLedger::sum_current() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.p_current;
  return s;
}

std::vector<Bitstring> SampleLedger::bitstrings() const {
  std::vector<Bitstring> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.z);
  return out;
}

double reconstruct_p0(const SampleLedger& ledger, double p_new) {
  require(p_new >= 0.0 && p_new <= 1.0, ErrorCode::InvalidArgument,
          "probability estimate must lie in [0, 1]");
  if (ledger.entries.empty()) return p_new;
  const double denom = 1.0 - ledger.sum_current();
  const double numer = 1.0 - ledger.sum_initial();
  require(denom > 0.0, ErrorCode::NumericError,
          "probability reconstruction denominator is not positive "
          "(over-rotation or estimation collapse)");
  require(numer > 0.0, ErrorCode::NumericError,
          "no initial probability mass remains for reconstruction");
  return p_new * numer / denom;
}

double flatness(const SampleLedger& ledger) {
  require(ledger.entries.size() >= 2, ErrorCode::InvalidArgument,
          "flatness needs at least two ledger entries");
  const double a = ledger.entries[ledger.entries.size() - 2].p_initial;
  const double b = ledger.entries.back().p_initial;
  require(a + b > 0.0, ErrorCode::NumericError,
          "flatness undefined for two zero probabilities");
  return 2.0 * std::abs(a - b) / (a + b);
}

AdaptResult adapt_steps(const StateVector& state0, const ReductionSet& set,
                        std::uint64_t current_steps, double current_residual,
                        std::uint64_t probe_shots, std::uint64_t seed,
                        std::uint32_t max_probes) {
  require(probe_shots >= 1, ErrorCode::InvalidArgument,
          "probe shots must be >= 1");
  LedgerIndex index;
  for (const auto& m : set.members) index.insert(m.value);
  Rng rng(seed);
  AdaptOutcome out =
      adapt_search(state0, set.member_values(), index, current_steps,
                   current_residual, probe_shots, rng, max_probes);
  AdaptResult result;
  result.probes = out.probes;
  result.found_new = out.found_new;
  if (out.found_new) {
    result.steps = out.accepted->steps;
    result.last_sample = out.accepted->sample;
  } else {
    result.steps = current_steps;
  }
  return result;
}

std::vector<std::uint64_t> top_m_targets(const StateVector& state,
                                         std::uint64_t m) {
  require(m >= 1 && m <= state.dimension(), ErrorCode::InvalidArgument,
          "target count out of range");
  auto order = state.indices_by_probability();
  order.resize(m);
  return order;
}

std::string RunRecord::trace_csv() const {
  std::string out = "k,s_k,Q_k,new_bitstring,p0_hat,E_k,delta_k,dE_k\n";
  for (const auto& t : traces) {
    out += std::to_string(t.k) + ',' + std::to_string(t.steps) + ',' +
           std::to_string(t.queries) + ',' + t.new_bitstrings + ',' +
           format_double(t.p0_latest) + ',' + format_double(t.energy) + ',' +
           format_double(t.flatness) + ',' + format_double(t.energy_delta) +
           '\n';
  }
  return out;
}

std::string RunRecord::to_json() const {
  nlohmann::json j;
  j["stop_mode"] = stop_mode_name(stop_mode);
  j["termination"] = termination_name(termination);
  j["seed"] = seed;
  j["q_tot"] = q_tot;
  j["total_shots"] = total_shots;
  j["final_energy"] = final_energy;
  j["clamp_events"] = clamp_events;
  if (!diagnostic.empty()) j["diagnostic"] = diagnostic;
  j["ledger"] = nlohmann::json::array();
  for (const auto& e : ledger.entries) {
    j["ledger"].push_back({{"bitstring", e.z.to_string()},
                           {"value", e.z.value},
                           {"p_current", e.p_current},
                           {"p_initial", e.p_initial},
                           {"iteration", e.iteration_added},
                           {"clamped", e.clamped}});
  }
  j["energies"] = nlohmann::json::array();
  for (const auto& s : solutions) j["energies"].push_back(s.energy);
  j["plan"] = nlohmann::json::parse(plan.to_json());
  j["rng"] = Rng::algorithm_name();
  return j.dump(2);
}

RunRecord run_sqdaa(const PauliHamiltonian* h, const StateVector& state0,
                    const DriverConfig& cfg) {
  cfg.validate();
  if (cfg.stop_mode != StopMode::CollectTopM) {
    require(h != nullptr, ErrorCode::InvalidArgument,
            "energy-based stop modes need a hamiltonian");
  }
  if (h != nullptr) {
    require(h->num_qubits() == state0.num_qubits(),
            ErrorCode::DimensionMismatch,
            "hamiltonian and state qubit counts differ");
  }

  RunRecord rec;
  rec.stop_mode = cfg.stop_mode;
  rec.seed = cfg.seed;
  Rng rng(cfg.seed);

  std::vector<std::uint64_t> targets;
  if (cfg.stop_mode == StopMode::CollectTopM) {
    targets = top_m_targets(state0, cfg.target_m);
  }
  LedgerIndex index;
  auto goal_met = [&]() {
    if (cfg.stop_mode != StopMode::CollectTopM) return false;
    for (std::uint64_t t : targets) {
      if (!index.contains(t)) return false;
    }
    return true;
  };
  StateVector current = state0;
  std::uint64_t current_steps = 0;
  bool flatness_phase = false;
  bool done = false;
  // Flatness compares the dominant reconstructed probabilities of
  // consecutive discovering iterations (one round may ledger several
  // bitstrings; its dominant one plays the role of that iteration's z_k).
  double prev_dominant_p0 = std::numeric_limits<double>::quiet_NaN();
  double last_dominant_p0 = std::numeric_limits<double>::quiet_NaN();

  for (std::uint64_t k = 0; k < cfg.max_iterations && !done; ++k) {
    if (rec.plan.shots_tot() + cfg.shots_aa_it > cfg.max_total_shots) {
      rec.termination = Termination::MaxIterations;
      rec.diagnostic = "total shot budget exhausted";
      done = true;
      break;
    }
    Measurement meas = cfg.exact_sampling
                           ? measure_exact(current, cfg.shots_aa_it)
                           : measure_counts(sample(current, cfg.shots_aa_it,
                                                   rng));
    rec.plan.entries.push_back({k, current_steps, 2 * current_steps + 1,
                                cfg.shots_aa_it,
                                rec.ledger.entries.size(), false});
    update_current_estimates(rec.ledger, meas);

    require(!meas.by_weight.empty(), ErrorCode::NumericError,
            "measurement produced no outcomes");
    const std::uint64_t top = meas.by_weight.front().first;
    if (index.contains(top) && unledgered_discoveries(meas, index).empty()) {
      // Nothing new surfaced: search for a workable step count.
      const double residual = ledger_residual(meas, index);
      std::vector<std::uint64_t> members;
      members.reserve(rec.ledger.entries.size());
      for (const auto& e : rec.ledger.entries) members.push_back(e.z.value);
      AdaptOutcome adapt =
          adapt_search(state0, members, index, current_steps, residual,
                       cfg.shots_aa_it, rng, cfg.adapt_max_probes);
      for (const auto& p : adapt.probes) {
        rec.plan.entries.push_back({k, p.steps, 2 * p.steps + 1,
                                    cfg.shots_aa_it,
                                    rec.ledger.entries.size(), true});
      }
      if (!adapt.found_new) {
        rec.termination = Termination::MaxIterations;
        rec.diagnostic =
            "step adaptation exhausted its probe budget without observing a "
            "new bitstring";
        done = true;
        break;
      }
      current = std::move(adapt.accepted->state);
      current_steps = adapt.accepted->steps;
      meas = std::move(adapt.accepted->measurement);
      update_current_estimates(rec.ledger, meas);
    }

    // Ledger every newly seen bitstring, largest weight first.
    const auto discoveries = unledgered_discoveries(meas, index);
    std::string new_names;
    double p0_latest = std::numeric_limits<double>::quiet_NaN();
    bool saturated = false;
    bool dominant_recorded = false;
    for (const auto& [value, weight] : discoveries) {
      saturated |= ledger_discovery(rec.ledger, index, value, weight,
                                    state0.num_qubits(), k,
                                    &rec.clamp_events);
      if (!new_names.empty()) new_names += ';';
      new_names += Bitstring(value, state0.num_qubits()).to_string();
      p0_latest = rec.ledger.entries.back().p_initial;
      if (!dominant_recorded) {
        prev_dominant_p0 = last_dominant_p0;
        last_dominant_p0 = rec.ledger.entries.back().p_initial;
        dominant_recorded = true;
      }
    }

    double delta_e = std::numeric_limits<double>::quiet_NaN();
    if (h != nullptr && !discoveries.empty()) {
      SubspaceSolution sol =
          solve_in_subspace(*h, Subspace{rec.ledger.bitstrings()});
      if (!rec.solutions.empty()) {
        delta_e = energy_delta(rec.solutions.back(), sol);
      }
      rec.solutions.push_back(std::move(sol));
    }

    IterationTrace trace;
    trace.k = k;
    trace.steps = current_steps;
    trace.queries = 2 * current_steps + 1;
    trace.new_bitstrings = new_names;
    trace.p0_latest = p0_latest;
    trace.energy = rec.solutions.empty()
                       ? std::numeric_limits<double>::quiet_NaN()
                       : rec.solutions.back().energy;
    trace.energy_delta = delta_e;
    trace.shots = cfg.shots_aa_it;

    // Goal checks run before the next rotation is planned.
    if (goal_met()) {
      rec.termination = Termination::TargetReached;
      done = true;
    } else if (h != nullptr && cfg.stop_mode == StopMode::ReferenceEnergy &&
               !rec.solutions.empty() &&
               std::abs(rec.solutions.back().energy - cfg.reference_energy) <=
                   cfg.epsilon) {
      rec.termination = Termination::TargetReached;
      done = true;
    } else if (h != nullptr &&
               cfg.stop_mode == StopMode::EnergyConvergence &&
               std::isfinite(delta_e) && delta_e <= cfg.epsilon) {
      rec.termination = Termination::EnergyConverged;
      done = true;
    }

    if (!done) {
      // Saturation: this round's estimates put the whole state inside the
      // ledger. Without unseen reserve to amplify there is no rotation to
      // plan; energy runs are done, goal-driven runs fall back to direct
      // sampling of the current state.
      if (saturated && meas.unseen <= 0.0) {
        if (cfg.stop_mode == StopMode::EnergyConvergence && h != nullptr) {
          rec.termination = Termination::EnergyConverged;
          rec.diagnostic =
              "no unseen support remains in the sampled estimate";
          done = true;
        } else {
          flatness_phase = true;
          rec.traces.push_back(trace);
          break;
        }
      } else {
        const double r =
            std::min(rec.ledger.sum_initial(), 1.0 - 1e-15);
        const double theta = theta_from_r(std::max(r, 0.0));
        const std::uint64_t next_steps =
            std::min(ideal_steps(theta, cfg.f_target), kMaxPlannedSteps);
        if (std::isfinite(prev_dominant_p0) &&
            std::isfinite(last_dominant_p0) &&
            prev_dominant_p0 + last_dominant_p0 > 0.0) {
          const double delta_flat =
              2.0 * std::abs(prev_dominant_p0 - last_dominant_p0) /
              (prev_dominant_p0 + last_dominant_p0);
          trace.flatness = delta_flat;
          if (delta_flat <= cfg.tau && next_steps != current_steps) {
            flatness_phase = true;
            rec.traces.push_back(trace);
            break;
          }
        }
        std::vector<Complex> amps = state0.amplitudes();
        std::vector<std::uint64_t> members;
        members.reserve(rec.ledger.entries.size());
        for (const auto& e : rec.ledger.entries) members.push_back(e.z.value);
        detail::standard_aa_inplace(amps, state0.amplitudes(), members,
                                    next_steps);
        current = StateVector(state0.num_qubits(), std::move(amps));
        current_steps = next_steps;
      }
    }
    rec.traces.push_back(trace);
  }

  if (!done && !flatness_phase) {
    rec.termination = Termination::MaxIterations;
    if (rec.diagnostic.empty()) {
      rec.diagnostic = "iteration budget exhausted";
    }
  }

  if (flatness_phase) {
    // Direct phase: keep measuring the final rotated state, ledgering every
    // new bitstring, until the energy criterion (or the goal) is met.
    rec.plan.direct_steps = current_steps;
    rec.termination = Termination::MaxIterations;
    rec.diagnostic = "direct phase did not converge within the shot budget";
    const std::uint64_t batch = cfg.direct_batch_size();
    std::uint64_t rounds = 0;
    while (rec.plan.shots_tot() + batch <= cfg.max_total_shots &&
           rounds++ < cfg.max_iterations) {
      Measurement meas = cfg.exact_sampling
                             ? measure_exact(current, batch)
                             : measure_counts(sample(current, batch, rng));
      rec.plan.direct_shots += batch;
      update_current_estimates(rec.ledger, meas);
      const auto discoveries = unledgered_discoveries(meas, index);
      bool converged = false;
      for (const auto& [value, weight] : discoveries) {
        (void)ledger_discovery(rec.ledger, index, value, weight,
                               state0.num_qubits(), cfg.max_iterations,
                               &rec.clamp_events);
        if (h != nullptr) {
          SubspaceSolution sol =
              solve_in_subspace(*h, Subspace{rec.ledger.bitstrings()});
          double delta_e = std::numeric_limits<double>::quiet_NaN();
          if (!rec.solutions.empty()) {
            delta_e = energy_delta(rec.solutions.back(), sol);
          }
          rec.solutions.push_back(std::move(sol));
          if (cfg.stop_mode == StopMode::ReferenceEnergy &&
              std::abs(rec.solutions.back().energy - cfg.reference_energy) <=
                  cfg.epsilon) {
            rec.termination = Termination::TargetReached;
            converged = true;
            break;
          }
          if (cfg.stop_mode == StopMode::EnergyConvergence &&
              std::isfinite(delta_e) && delta_e <= cfg.epsilon) {
            rec.termination = Termination::FlatnessThenEnergyConverged;
            converged = true;
            break;
          }
        }
      }
      if (goal_met()) {
        rec.termination = Termination::TargetReached;
        converged = true;
      }
      if (converged) {
        rec.diagnostic.clear();
        break;
      }
    }
  }

  rec.q_tot = rec.plan.q_tot();
  rec.total_shots = rec.plan.shots_tot();
  if (!rec.solutions.empty()) rec.final_energy = rec.solutions.back().energy;
  return rec;
}

namespace {

/// Exact first-hit simulation of direct sampling until every target has been
/// seen: waits are geometric in the remaining target mass, and the hit is
/// picked proportionally within the unseen targets. Distributionally
/// identical to shot-by-shot sampling for the stopping time and hit order.
struct CollectSimulation {
  std::uint64_t total_shots = 0;
  std::vector<std::uint64_t> hit_order;
  std::vector<std::uint64_t> extra_seen;  // non-target states likely observed
};

CollectSimulation simulate_collect_all(const StateVector& state,
                                       const std::vector<std::uint64_t>& targets,
                                       Rng& rng) {
  const auto probs = state.probabilities();
  CollectSimulation sim;
  std::vector<std::uint64_t> unseen = targets;
  struct Segment {
    double conditional_mass;  // 1 - q_r (mass available to misses)
    std::uint64_t misses;
  };
  std::vector<Segment> segments;
  while (!unseen.empty()) {
    double q = 0.0;
    for (std::uint64_t t : unseen) q += probs[t];
    require(q > 0.0, ErrorCode::InvalidArgument,
            "a collection target has zero probability");
    const std::uint64_t gap = rng.geometric(q);
    sim.total_shots += gap;
    segments.push_back({1.0 - q, gap - 1});
    double u = rng.uniform01() * q;
    std::size_t hit = unseen.size() - 1;
    for (std::size_t i = 0; i < unseen.size(); ++i) {
      u -= probs[unseen[i]];
      if (u <= 0.0) {
        hit = i;
        break;
      }
    }
    sim.hit_order.push_back(unseen[hit]);
    unseen.erase(unseen.begin() + static_cast<std::ptrdiff_t>(hit));
  }
  // Which non-target states showed up among the misses (per-state Bernoulli
  // on the exact per-segment no-show probability; marginals are faithful,
  // cross-state correlations are not tracked).
  std::unordered_set<std::uint64_t> target_set(targets.begin(), targets.end());
  for (std::uint64_t v = 0; v < probs.size(); ++v) {
    if (probs[v] <= 0.0 || target_set.count(v)) continue;
    double log_no_show = 0.0;
    for (const auto& seg : segments) {
      if (seg.misses == 0 || seg.conditional_mass <= 0.0) continue;
      const double frac = std::min(probs[v] / seg.conditional_mass, 1.0);
      if (frac >= 1.0) {
        log_no_show = -std::numeric_limits<double>::infinity();
        break;
      }
      log_no_show += static_cast<double>(seg.misses) * std::log1p(-frac);
    }
    if (rng.uniform01() < -std::expm1(log_no_show)) {
      sim.extra_seen.push_back(v);
    }
  }
  return sim;
}

}  // namespace

RunRecord run_sqd(const PauliHamiltonian* h, const StateVector& state0,
                  const DriverConfig& cfg) {
  cfg.validate();
  if (cfg.stop_mode != StopMode::CollectTopM) {
    require(h != nullptr, ErrorCode::InvalidArgument,
            "energy-based stop modes need a hamiltonian");
  }
  if (h != nullptr) {
    require(h->num_qubits() == state0.num_qubits(),
            ErrorCode::DimensionMismatch,
            "hamiltonian and state qubit counts differ");
  }
  RunRecord rec;
  rec.stop_mode = cfg.stop_mode;
  rec.seed = cfg.seed;
  Rng rng(cfg.seed);

  if (cfg.stop_mode == StopMode::CollectTopM) {
    const auto targets = top_m_targets(state0, cfg.target_m);
    CollectSimulation sim = simulate_collect_all(state0, targets, rng);
    rec.plan.entries.push_back({0, 0, 1, sim.total_shots, 0, false});
    for (std::uint64_t v : sim.hit_order) {
      LedgerEntry e;
      e.z = Bitstring(v, state0.num_qubits());
      e.p_current = state0.probability(v);
      e.p_initial = e.p_current;
      rec.ledger.entries.push_back(e);
    }
    std::sort(sim.extra_seen.begin(), sim.extra_seen.end(),
              [&](std::uint64_t a, std::uint64_t b) {
                const double pa = state0.probability(a);
                const double pb = state0.probability(b);
                if (pa != pb) return pa > pb;
                return a < b;
              });
    for (std::uint64_t v : sim.extra_seen) {
      LedgerEntry e;
      e.z = Bitstring(v, state0.num_qubits());
      e.p_current = state0.probability(v);
      e.p_initial = e.p_current;
      rec.ledger.entries.push_back(e);
    }
    if (h != nullptr) {
      if (rec.ledger.entries.size() <= 2048) {
        rec.solutions.push_back(
            solve_in_subspace(*h, Subspace{rec.ledger.bitstrings()}));
      } else {
        rec.diagnostic =
            "subspace larger than the dense-solve limit; final "
            "diagonalization skipped";
      }
    }
    rec.termination = sim.total_shots <= cfg.max_total_shots
                          ? Termination::TargetReached
                          : Termination::MaxIterations;
    rec.q_tot = rec.plan.q_tot();
    rec.total_shots = rec.plan.shots_tot();
    if (!rec.solutions.empty()) rec.final_energy = rec.solutions.back().energy;
    return rec;
  }

  // Energy-criterion modes: literal sampling in geometrically growing
  // batches, re-diagonalizing whenever the unique set grows.
  LedgerIndex index;
  std::unordered_map<std::uint64_t, std::uint64_t> cumulative;
  std::uint64_t total = 0;
  std::uint64_t batch = cfg.direct_batch_size();
  std::uint64_t round = 0;
  rec.termination = Termination::MaxIterations;
  rec.diagnostic = "shot budget exhausted before the energy criterion";
  while (total + batch <= cfg.max_total_shots &&
         round < cfg.max_iterations) {
    const SampleResult s = sample(state0, batch, rng);
    rec.plan.entries.push_back({round, 0, 1, batch, rec.ledger.entries.size(),
                                false});
    total += batch;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> fresh;
    for (const auto& [value, count] : s.counts) {
      cumulative[value] += count;
      if (!index.contains(value)) fresh.push_back({value, count});
    }
    std::sort(fresh.begin(), fresh.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (const auto& [value, count] : fresh) {
      LedgerEntry e;
      e.z = Bitstring(value, state0.num_qubits());
      e.iteration_added = round;
      rec.ledger.entries.push_back(e);
      index.insert(value);
    }
    // One diagonalization per batch that grew the unique set; the energy
    // delta compares successive diagonalizations.
    bool converged = false;
    if (!fresh.empty()) {
      SubspaceSolution sol =
          solve_in_subspace(*h, Subspace{rec.ledger.bitstrings()});
      double delta_e = std::numeric_limits<double>::quiet_NaN();
      if (!rec.solutions.empty()) {
        delta_e = energy_delta(rec.solutions.back(), sol);
      }
      rec.solutions.push_back(std::move(sol));
      if (cfg.stop_mode == StopMode::ReferenceEnergy &&
          std::abs(rec.solutions.back().energy - cfg.reference_energy) <=
              cfg.epsilon) {
        rec.termination = Termination::TargetReached;
        converged = true;
      }
      if (cfg.stop_mode == StopMode::EnergyConvergence &&
          std::isfinite(delta_e) && delta_e <= cfg.epsilon) {
        rec.termination = Termination::EnergyConverged;
        converged = true;
      }
    }
    // Empirical estimates refresh every round.
    for (auto& e : rec.ledger.entries) {
      e.p_current = static_cast<double>(cumulative[e.z.value]) /
                    static_cast<double>(total);
      e.p_initial = e.p_current;
    }
    IterationTrace trace;
    trace.k = round;
    trace.steps = 0;
    trace.queries = 1;
    trace.shots = batch;
    trace.energy = rec.solutions.empty()
                       ? std::numeric_limits<double>::quiet_NaN()
                       : rec.solutions.back().energy;
    rec.traces.push_back(trace);
    if (converged) {
      rec.diagnostic.clear();
      break;
    }
    ++round;
    batch = std::min<std::uint64_t>(batch * 2, 1000000);
  }
  rec.q_tot = rec.plan.q_tot();
  rec.total_shots = rec.plan.shots_tot();
  if (!rec.solutions.empty()) rec.final_energy = rec.solutions.back().energy;
  return rec;
}

}  // namespace sqdaa
