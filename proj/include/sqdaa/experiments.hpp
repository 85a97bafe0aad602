// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqdaa/driver.hpp"
#include "sqdaa/resources.hpp"

namespace sqdaa {

/// Flat "key = value" configuration with dotted keys for nesting and '#'
/// comments. Values stay strings until a typed getter is called.
class Config {
 public:
  static Config parse(const std::string& text);
  static Config read_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int_or(const std::string& key, std::int64_t fallback) const;
  bool get_bool_or(const std::string& key, bool fallback) const;
  std::vector<std::int64_t> get_int_list(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  const std::map<std::string, std::string>& entries() const { return map_; }
  std::string to_text() const;

 private:
  std::map<std::string, std::string> map_;
};

struct AspResult {
  StateVector state;
  std::uint64_t reps = 0;   // chosen Trotter repetitions per time step
  std::uint64_t steps = 0;  // chosen time steps
  double energy = 0.0;
  double initial_energy = 0.0;
  std::uint64_t rotation_count = 0;  // execution-trace rotation count
  /// Every grid pair with its final energy and feasibility.
  struct GridPoint {
    std::uint64_t reps;
    std::uint64_t steps;
    double energy;
    bool feasible;
  };
  std::vector<GridPoint> grid;
};

/// Discretized adiabatic sweep from the single-Z part's basis-state ground
/// state toward the full Hamiltonian's ground state. Feasible (reps, steps)
/// pairs improve <H> by at least 1 mHa over the initial state; the returned
/// pair minimizes reps * steps. `evolution_sign` is -1 for exp(-iHt) (the
/// default convention) or +1.
AspResult asp_prepare(const PauliHamiltonian& h, double sweep_time,
                      const std::vector<std::uint64_t>& reps_grid,
                      const std::vector<std::uint64_t>& steps_grid,
                      int evolution_sign = -1);

struct AggregateStats {
  std::map<std::string, double> median;
  std::map<std::string, double> p16;
  std::map<std::string, double> p84;
  std::uint64_t restarts = 0;

  std::string to_json() const;
};

AggregateStats aggregate_metrics(
    const std::vector<std::map<std::string, double>>& per_restart);

struct ExperimentResult {
  std::vector<std::string> files_written;
  std::string summary_json;
};

/// Executes one experiment mode (run-sqd, run-sqdaa, compare, model-dist,
/// resources, asp-prepare) over seeded restarts and writes CSV/JSON outputs
/// into the output directory. Identical config + seed base give byte
/// identical outputs.
ExperimentResult run_experiment(const Config& cfg,
                                const std::string& output_dir);

}  // namespace sqdaa
