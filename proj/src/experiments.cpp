// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "sqdaa/analytics.hpp"
#include "sqdaa/numerics.hpp"

namespace sqdaa {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    require(eq != std::string::npos, ErrorCode::ParseError,
            "config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    require(!key.empty(), ErrorCode::ParseError,
            "config line " + std::to_string(line_no) + ": empty key");
    cfg.map_[key] = value;
  }
  return cfg;
}

Config Config::read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

bool Config::has(const std::string& key) const { return map_.count(key) > 0; }

std::string Config::get(const std::string& key) const {
  const auto it = map_.find(key);
  require(it != map_.end(), ErrorCode::InvalidArgument,
          "missing config key: " + key);
  return it->second;
}

std::string Config::get_or(const std::string& key,
                           const std::string& fallback) const {
  const auto it = map_.find(key);
  return it == map_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key) const {
  const std::string v = get(key);
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    detail::fail(ErrorCode::ParseError, "config key " + key +
                                            ": not a number: " + v);
  }
  require(used == v.size(), ErrorCode::ParseError,
          "config key " + key + ": not a number: " + v);
  return out;
}

double Config::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::int64_t Config::get_int(const std::string& key) const {
  const double v = get_double(key);
  require(v == std::floor(v), ErrorCode::ParseError,
          "config key " + key + ": expected an integer");
  return static_cast<std::int64_t>(v);
}

std::int64_t Config::get_int_or(const std::string& key,
                                std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool Config::get_bool_or(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const std::string v = get(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  detail::fail(ErrorCode::ParseError, "config key " + key +
                                          ": expected a boolean, got " + v);
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
  const std::string v = get(key);
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream in(v);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      detail::fail(ErrorCode::ParseError,
                   "config key " + key + ": not an integer: " + token);
    }
    require(used == token.size(), ErrorCode::ParseError,
            "config key " + key + ": not an integer: " + token);
    out.push_back(value);
  }
  require(!out.empty(), ErrorCode::ParseError,
          "config key " + key + ": empty list");
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  map_[trim(key)] = trim(value);
}

std::string Config::to_text() const {
  std::string out;
  for (const auto& [key, value] : map_) {
    out += key + " = " + value + "\n";
  }
  return out;
}

AspResult asp_prepare(const PauliHamiltonian& h, double sweep_time,
                      const std::vector<std::uint64_t>& reps_grid,
                      const std::vector<std::uint64_t>& steps_grid,
                      int evolution_sign) {
  require(sweep_time > 0.0, ErrorCode::InvalidArgument,
          "sweep time must be positive");
  require(!reps_grid.empty() && !steps_grid.empty(),
          ErrorCode::InvalidArgument, "empty (reps, steps) grid");
  require(evolution_sign == 1 || evolution_sign == -1,
          ErrorCode::InvalidArgument, "evolution sign must be +1 or -1");
  const int n = h.num_qubits();

  std::vector<const PauliTerm*> z_terms, drive_terms;
  for (const auto& t : h.terms()) {
    if (t.string.is_diagonal() && t.string.weight() == 1) {
      z_terms.push_back(&t);
    } else {
      drive_terms.push_back(&t);
    }
  }
  require(!z_terms.empty(), ErrorCode::InvalidArgument,
          "hamiltonian has no single-Z terms to anchor the sweep");

  // Ground state of the single-Z part: pick each biased qubit's lower level,
  // free qubits default to 0 (lowest-value tie break).
  std::uint64_t start = 0;
  for (const auto* t : z_terms) {
    const int qubit = std::countr_zero(t->string.z_mask());
    if (t->coefficient > 0.0) start |= std::uint64_t{1} << qubit;
  }
  const StateVector initial = StateVector::computational_basis(n, start);
  const double e_initial = expectation(initial, h);

  const double sign = static_cast<double>(evolution_sign);
  auto evolve = [&](std::uint64_t reps, std::uint64_t steps) {
    StateVector state = initial;
    std::uint64_t rotations = 0;
    const double dt = sweep_time / static_cast<double>(steps);
    for (std::uint64_t a = 1; a <= steps; ++a) {
      const double ramp =
          static_cast<double>(a) / static_cast<double>(steps);  // w(u) = u
      const double slice = sign * dt / static_cast<double>(reps);
      for (std::uint64_t rep = 0; rep < reps; ++rep) {
        std::vector<Complex>& amps = state.mutable_amplitudes();
        const PauliString* previous = nullptr;
        for (const auto& term : h.terms()) {
          const bool is_anchor =
              term.string.is_diagonal() && term.string.weight() == 1;
          const double coeff =
              is_anchor ? term.coefficient : term.coefficient * ramp;
          detail::pauli_exponential_inplace(amps, term.string, slice * coeff);
          if (previous == nullptr ||
              !strings_share_basis(*previous, term.string)) {
            ++rotations;
          }
          previous = &term.string;
        }
      }
      state.check_normalized();
    }
    return std::pair<StateVector, std::uint64_t>(std::move(state), rotations);
  };

  AspResult result{initial, 0, 0, e_initial, e_initial, 0, {}};
  bool have_choice = false;
  std::uint64_t best_product = 0;
  for (std::uint64_t reps : reps_grid) {
    for (std::uint64_t steps : steps_grid) {
      require(reps >= 1 && steps >= 1, ErrorCode::InvalidArgument,
              "grid entries must be >= 1");
      auto [state, rotations] = evolve(reps, steps);
      const double energy = expectation(state, h);
      const bool feasible = energy <= e_initial - 1e-3;
      result.grid.push_back({reps, steps, energy, feasible});
      if (!feasible) continue;
      const std::uint64_t product = reps * steps;
      if (!have_choice || product < best_product ||
          (product == best_product &&
           std::make_pair(steps, reps) <
               std::make_pair(result.steps, result.reps))) {
        have_choice = true;
        best_product = product;
        result.state = std::move(state);
        result.reps = reps;
        result.steps = steps;
        result.energy = energy;
        result.rotation_count = rotations;
      }
    }
  }
  require(have_choice, ErrorCode::RuntimeError,
          "adiabatic sweep found no feasible (reps, steps) pair: initial "
          "state already converged or grid too coarse");
  return result;
}

std::string AggregateStats::to_json() const {
  nlohmann::json j;
  j["restarts"] = restarts;
  j["median"] = median;
  j["p16"] = p16;
  j["p84"] = p84;
  return j.dump(2);
}

AggregateStats aggregate_metrics(
    const std::vector<std::map<std::string, double>>& per_restart) {
  AggregateStats stats;
  stats.restarts = per_restart.size();
  if (per_restart.empty()) return stats;
  for (const auto& [key, unused] : per_restart.front()) {
    std::vector<double> values;
    values.reserve(per_restart.size());
    bool all_finite = true;
    for (const auto& m : per_restart) {
      const auto it = m.find(key);
      if (it == m.end() || !std::isfinite(it->second)) {
        all_finite = false;
        break;
      }
      values.push_back(it->second);
    }
    if (!all_finite) continue;
    stats.median[key] = percentile_nearest_rank(values, 50.0);
    stats.p16[key] = percentile_nearest_rank(values, 16.0);
    stats.p84[key] = percentile_nearest_rank(values, 84.0);
  }
  return stats;
}

namespace {

struct ExperimentContext {
  Config cfg;
  std::string output_dir;
  std::vector<std::string> files;

  std::string config_header() const {
    std::string out;
    for (const auto& [key, value] : cfg.entries()) {
      out += "# " + key + " = " + value + "\n";
    }
    return out;
  }

  void write_file(const std::string& name, const std::string& content) {
    namespace fs = std::filesystem;
    fs::create_directories(output_dir);
    const std::string path = (fs::path(output_dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::IoError, "cannot write file: " + path);
    out << content;
    require(out.good(), ErrorCode::IoError, "write failed: " + path);
    files.push_back(name);
  }
};

ModelKind config_model_kind(const Config& cfg) {
  return model_kind_from_name(cfg.get_or("model.kind", "exponential"));
}

double config_model_parameter(const Config& cfg, ModelKind kind) {
  switch (kind) {
    case ModelKind::Exponential:
      return cfg.get_double_or("model.alpha", 1.0);
    case ModelKind::Algebraic:
      return cfg.get_double_or("model.gamma", 5.0);
    case ModelKind::Step:
      return static_cast<double>(cfg.get_int_or("model.m", 4));
  }
  detail::fail(ErrorCode::InvalidArgument, "unknown model kind");
}

DistributionSpec config_distribution(const Config& cfg) {
  DistributionSpec spec;
  spec.kind = config_model_kind(cfg);
  spec.parameter = config_model_parameter(cfg, spec.kind);
  spec.num_qubits = static_cast<int>(cfg.get_int_or("model.qubits", 10));
  spec.validate();
  return spec;
}

DriverConfig config_driver(const Config& cfg) {
  DriverConfig d;
  d.shots_aa_it =
      static_cast<std::uint64_t>(cfg.get_int_or("driver.shots_aa_it", 100));
  d.direct_batch =
      static_cast<std::uint64_t>(cfg.get_int_or("driver.direct_batch", 0));
  d.f_target = cfg.get_double_or("driver.f_t", 0.8);
  d.tau = cfg.get_double_or("driver.tau", 0.4);
  d.epsilon = cfg.get_double_or("driver.epsilon", 1.6e-3);
  d.max_iterations =
      static_cast<std::uint64_t>(cfg.get_int_or("driver.max_iterations", 1000));
  d.max_total_shots = static_cast<std::uint64_t>(
      cfg.get_double_or("driver.max_total_shots", 1e18));
  d.adapt_max_probes =
      static_cast<std::uint32_t>(cfg.get_int_or("driver.adapt_probes", 12));
  d.exact_sampling = cfg.get_bool_or("driver.exact_sampling", false);
  const std::string stop = cfg.get_or("driver.stop", "energy");
  if (stop == "energy") {
    d.stop_mode = StopMode::EnergyConvergence;
  } else if (stop == "reference") {
    d.stop_mode = StopMode::ReferenceEnergy;
    d.reference_energy = cfg.get_double("driver.reference_energy");
  } else if (stop == "collect-m") {
    d.stop_mode = StopMode::CollectTopM;
    d.target_m = static_cast<std::uint64_t>(cfg.get_int("driver.target_m"));
  } else {
    detail::fail(ErrorCode::InvalidArgument, "unknown stop mode: " + stop);
  }
  return d;
}

std::optional<PauliHamiltonian> config_hamiltonian(const Config& cfg) {
  if (!cfg.has("hamiltonian")) return std::nullopt;
  return read_hamiltonian_file(cfg.get("hamiltonian"));
}

StateVector config_state(const Config& cfg,
                         const std::optional<PauliHamiltonian>& h) {
  const std::string source = cfg.get_or("state.source", "model");
  if (source == "model") {
    const ModelKind kind = config_model_kind(cfg);
    return model_state(kind, config_model_parameter(cfg, kind),
                       static_cast<int>(cfg.get_int_or("model.qubits", 10)));
  }
  if (source == "file") {
    return read_state_file(cfg.get("state.file"),
                           static_cast<int>(cfg.get_int("state.qubits")));
  }
  if (source == "asp") {
    require(h.has_value(), ErrorCode::InvalidArgument,
            "asp state source needs a hamiltonian");
    std::vector<std::uint64_t> reps, steps;
    for (std::int64_t v : cfg.get_int_list("state.asp.reps")) {
      reps.push_back(static_cast<std::uint64_t>(v));
    }
    for (std::int64_t v : cfg.get_int_list("state.asp.steps")) {
      steps.push_back(static_cast<std::uint64_t>(v));
    }
    const int sign = cfg.get_or("state.asp.sign", "minus") == "plus" ? 1 : -1;
    return asp_prepare(*h, cfg.get_double_or("state.asp.sweep_time", 2.0),
                       reps, steps, sign)
        .state;
  }
  detail::fail(ErrorCode::InvalidArgument, "unknown state source: " + source);
}

std::map<std::string, double> run_metrics(const RunRecord& rec) {
  return {
      {"q_tot", static_cast<double>(rec.q_tot)},
      {"total_shots", static_cast<double>(rec.total_shots)},
      {"final_energy", rec.final_energy},
      {"ledger_size", static_cast<double>(rec.ledger.entries.size())},
      {"iterations", static_cast<double>(rec.traces.size())},
  };
}

/// Runs `count` seeded jobs on a small worker pool; results keep job order.
/// The first exception thrown by any job is rethrown after all workers join.
template <typename Fn>
void run_parallel(std::uint64_t count, std::uint64_t workers, Fn&& fn) {
  workers = std::max<std::uint64_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

RunResourceInput record_to_resource_input(const RunRecord& rec, int num_qubits,
                                          const std::string& pipeline) {
  RunResourceInput input;
  input.num_qubits = num_qubits;
  input.pipeline = pipeline;
  for (const auto& e : rec.plan.entries) {
    input.entries.push_back({e.steps, e.set_size, e.shots});
  }
  if (rec.plan.direct_shots > 0) {
    input.entries.push_back({rec.plan.direct_steps,
                             rec.ledger.entries.size(),
                             rec.plan.direct_shots});
  }
  return input;
}

void mode_run_driver(ExperimentContext& ctx, bool amplified) {
  const auto h = config_hamiltonian(ctx.cfg);
  const StateVector state0 = config_state(ctx.cfg, h);
  const DriverConfig driver = config_driver(ctx.cfg);
  const std::uint64_t restarts =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("restarts", 1));
  const std::uint64_t seed_base =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("seed_base", 1));
  const std::uint64_t workers =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("workers", 4));

  std::vector<RunRecord> records(restarts);
  const PauliHamiltonian* h_ptr = h.has_value() ? &*h : nullptr;
  run_parallel(restarts, workers, [&](std::uint64_t i) {
    DriverConfig cfg_i = driver;
    cfg_i.seed = seed_base + i;
    records[i] = amplified ? run_sqdaa(h_ptr, state0, cfg_i)
                           : run_sqd(h_ptr, state0, cfg_i);
  });

  std::vector<std::map<std::string, double>> metrics;
  for (std::uint64_t i = 0; i < restarts; ++i) {
    ctx.write_file("trace_" + std::to_string(i) + ".csv",
                   ctx.config_header() + records[i].trace_csv());
    ctx.write_file("record_" + std::to_string(i) + ".json",
                   records[i].to_json() + "\n");
    metrics.push_back(run_metrics(records[i]));
  }
  nlohmann::json j;
  j["mode"] = amplified ? "run-sqdaa" : "run-sqd";
  j["config"] = ctx.cfg.entries();
  j["aggregate"] = nlohmann::json::parse(aggregate_metrics(metrics).to_json());
  ctx.write_file("aggregate.json", j.dump(2) + "\n");
}

void mode_compare(ExperimentContext& ctx) {
  const auto h = config_hamiltonian(ctx.cfg);
  const StateVector state0 = config_state(ctx.cfg, h);
  const DriverConfig driver = config_driver(ctx.cfg);
  const std::uint64_t restarts =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("restarts", 1));
  const std::uint64_t seed_base =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("seed_base", 1));
  const std::uint64_t workers =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("workers", 4));
  constexpr std::uint64_t kBaselineSeedOffset = 1000000007ull;

  std::vector<RunRecord> amplified(restarts), baseline(restarts);
  const PauliHamiltonian* h_ptr = h.has_value() ? &*h : nullptr;
  run_parallel(restarts, workers, [&](std::uint64_t i) {
    DriverConfig cfg_i = driver;
    cfg_i.seed = seed_base + i;
    amplified[i] = run_sqdaa(h_ptr, state0, cfg_i);
    cfg_i.seed = seed_base + kBaselineSeedOffset + i;
    baseline[i] = run_sqd(h_ptr, state0, cfg_i);
  });

  std::string csv =
      ctx.config_header() +
      "restart,q_sqd,q_sqdaa,q_ratio,shots_sqd,shots_sqdaa,shots_ratio,"
      "energy_sqd,energy_sqdaa\n";
  std::vector<std::map<std::string, double>> metrics;
  for (std::uint64_t i = 0; i < restarts; ++i) {
    const double q_sqd = static_cast<double>(baseline[i].q_tot);
    const double q_aa = static_cast<double>(amplified[i].q_tot);
    const double ns_sqd = static_cast<double>(baseline[i].total_shots);
    const double ns_aa = static_cast<double>(amplified[i].total_shots);
    csv += std::to_string(i) + ',' + format_double(q_sqd) + ',' +
           format_double(q_aa) + ',' + format_double(q_sqd / q_aa) + ',' +
           format_double(ns_sqd) + ',' + format_double(ns_aa) + ',' +
           format_double(ns_sqd / ns_aa) + ',' +
           format_double(baseline[i].final_energy) + ',' +
           format_double(amplified[i].final_energy) + '\n';
    metrics.push_back({
        {"q_tot_sqd", q_sqd},
        {"q_tot_sqdaa", q_aa},
        {"q_ratio", q_sqd / q_aa},
        {"shots_sqd", ns_sqd},
        {"shots_sqdaa", ns_aa},
        {"shots_ratio", ns_sqd / ns_aa},
    });
  }
  ctx.write_file("compare.csv", csv);
  nlohmann::json j;
  j["mode"] = "compare";
  j["config"] = ctx.cfg.entries();
  j["aggregate"] = nlohmann::json::parse(aggregate_metrics(metrics).to_json());
  ctx.write_file("aggregate.json", j.dump(2) + "\n");
}

void mode_model_dist(ExperimentContext& ctx) {
  const DistributionSpec spec = config_distribution(ctx.cfg);
  const std::uint64_t m_min =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("model_dist.m_min", 1));
  const std::uint64_t m_max =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("model_dist.m_max", 30));
  const std::uint64_t shots =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("model_dist.shots", 1000));
  const double p_fail = ctx.cfg.get_double_or("model_dist.p_fail", 0.1);
  const ComplexityCurve curve = ratio_curve(spec, m_min, m_max, shots, p_fail);
  ctx.write_file("curve.csv", ctx.config_header() + curve.to_csv());
  nlohmann::json j;
  j["mode"] = "model-dist";
  j["config"] = ctx.cfg.entries();
  j["points"] = curve.points.size();
  ctx.write_file("summary.json", j.dump(2) + "\n");
}

void mode_asp_prepare(ExperimentContext& ctx) {
  const auto h = config_hamiltonian(ctx.cfg);
  require(h.has_value(), ErrorCode::InvalidArgument,
          "asp-prepare needs a hamiltonian");
  std::vector<std::uint64_t> reps, steps;
  for (std::int64_t v : ctx.cfg.get_int_list("state.asp.reps")) {
    reps.push_back(static_cast<std::uint64_t>(v));
  }
  for (std::int64_t v : ctx.cfg.get_int_list("state.asp.steps")) {
    steps.push_back(static_cast<std::uint64_t>(v));
  }
  const int sign =
      ctx.cfg.get_or("state.asp.sign", "minus") == "plus" ? 1 : -1;
  const AspResult result =
      asp_prepare(*h, ctx.cfg.get_double_or("state.asp.sweep_time", 2.0), reps,
                  steps, sign);
  ctx.write_file("state.txt", state_to_text(result.state));
  nlohmann::json j;
  j["mode"] = "asp-prepare";
  j["config"] = ctx.cfg.entries();
  j["chosen_reps"] = result.reps;
  j["chosen_steps"] = result.steps;
  j["energy"] = result.energy;
  j["initial_energy"] = result.initial_energy;
  j["rotation_count"] = result.rotation_count;
  j["grid"] = nlohmann::json::array();
  for (const auto& g : result.grid) {
    j["grid"].push_back({{"reps", g.reps},
                         {"steps", g.steps},
                         {"energy", g.energy},
                         {"feasible", g.feasible}});
  }
  ctx.write_file("asp.json", j.dump(2) + "\n");
}

void mode_resources(ExperimentContext& ctx) {
  const auto h = config_hamiltonian(ctx.cfg);
  require(h.has_value(), ErrorCode::InvalidArgument,
          "resources mode needs a hamiltonian");
  const StateVector state0 = config_state(ctx.cfg, h);
  const DriverConfig driver = config_driver(ctx.cfg);
  const std::uint64_t seed_base =
      static_cast<std::uint64_t>(ctx.cfg.get_int_or("seed_base", 1));
  const double eps_tot = ctx.cfg.get_double_or("resources.eps_tot", 1e-4);
  const double delta_e = ctx.cfg.get_double_or("resources.delta_e", 1.6e-3);
  const double overlap = ctx.cfg.get_double_or("resources.c_gs_overlap", 0.9);
  const double confidence = ctx.cfg.get_double_or("resources.confidence", 0.99);
  const bool include_reflection =
      ctx.cfg.get_bool_or("resources.include_zero_reflection", true);

  PrepSpec prep;
  const std::string prep_kind = ctx.cfg.get_or("resources.prep", "ucj");
  if (prep_kind == "ucj") {
    prep = make_ucj_prep(
        h->num_qubits(),
        static_cast<int>(ctx.cfg.get_int_or("resources.ucj_layers", 6)),
        eps_tot);
  } else if (prep_kind == "asp") {
    prep = make_asp_prep(
        *h,
        static_cast<std::uint64_t>(ctx.cfg.get_int_or("resources.asp_reps", 1)),
        static_cast<std::uint64_t>(
            ctx.cfg.get_int_or("resources.asp_steps", 1)),
        eps_tot);
  } else {
    detail::fail(ErrorCode::InvalidArgument,
                 "unknown prep model: " + prep_kind);
  }

  DriverConfig cfg_run = driver;
  cfg_run.seed = seed_base;
  const RunRecord rec_aa = run_sqdaa(&*h, state0, cfg_run);
  cfg_run.seed = seed_base + 1;
  const RunRecord rec_sqd = run_sqd(&*h, state0, cfg_run);

  const ResourceReport report_aa = pipeline_report(
      record_to_resource_input(rec_aa, h->num_qubits(), "sqd-aa"), prep,
      include_reflection);
  const ResourceReport report_sqd = pipeline_report(
      record_to_resource_input(rec_sqd, h->num_qubits(), "sqd"), prep,
      include_reflection);

  double c_gs = 0.0;
  nlohmann::json fit_json;
  if (ctx.cfg.has("resources.c_gs")) {
    c_gs = ctx.cfg.get_double("resources.c_gs");
  } else {
    require(h->num_qubits() <= 10, ErrorCode::InvalidArgument,
            "fitting the product-formula error constant needs n <= 10; "
            "supply resources.c_gs");
    std::vector<double> grid;
    for (int i = 0; i < 8; ++i) {
      grid.push_back(std::pow(10.0, -3.0 + 2.0 * i / 7.0));
    }
    const TrotterErrorModel model = fit_trotter_constant(
        *h, grid, ctx.cfg.get_double_or("resources.fit_time", 1.0));
    require(!model.exact, ErrorCode::NumericError,
            "product formula is exact for this hamiltonian; no error "
            "constant to fit");
    c_gs = model.c_gs;
    fit_json = nlohmann::json::parse(model.to_json());
  }
  const ResourceReport report_trotter = iqpe_trotter_optimize(
      *h, c_gs, delta_e, overlap, prep.t_count(), prep.t_depth(), confidence);
  const ResourceReport report_qubitization = iqpe_qubitization_counts(
      *h, delta_e, overlap, prep.t_count(), prep.t_depth(), confidence);

  nlohmann::json j;
  j["mode"] = "resources";
  j["config"] = ctx.cfg.entries();
  j["prep"] = {{"name", prep.name},
               {"rotations", prep.rotations.rotations},
               {"rotation_depth", prep.rotations.rotation_depth},
               {"t_count", prep.t_count()},
               {"t_depth", prep.t_depth()}};
  j["sqd"] = nlohmann::json::parse(report_sqd.to_json());
  j["sqd_aa"] = nlohmann::json::parse(report_aa.to_json());
  j["iqpe_trotter"] = nlohmann::json::parse(report_trotter.to_json());
  j["iqpe_qubitization"] = nlohmann::json::parse(report_qubitization.to_json());
  if (!fit_json.is_null()) j["trotter_fit"] = fit_json;
  ctx.write_file("resources.json", j.dump(2) + "\n");

  std::string csv = ctx.config_header() +
                    "pipeline,t_count_deepest,t_depth_deepest,t_count_total,"
                    "t_depth_total,shots,ancillas\n";
  for (const ResourceReport* r :
       {&report_sqd, &report_aa, &report_trotter, &report_qubitization}) {
    csv += r->pipeline + ',' + std::to_string(r->t_count_deepest) + ',' +
           std::to_string(r->t_depth_deepest) + ',' +
           format_double(r->t_count_total) + ',' +
           format_double(r->t_depth_total) + ',' + std::to_string(r->shots) +
           ',' + std::to_string(r->ancillas) + '\n';
  }
  ctx.write_file("resources.csv", csv);
}

}  // namespace

ExperimentResult run_experiment(const Config& cfg,
                                const std::string& output_dir) {
  ExperimentContext ctx{cfg, output_dir, {}};
  const std::string mode = cfg.get("mode");
  if (mode == "run-sqdaa") {
    mode_run_driver(ctx, true);
  } else if (mode == "run-sqd") {
    mode_run_driver(ctx, false);
  } else if (mode == "compare") {
    mode_compare(ctx);
  } else if (mode == "model-dist") {
    mode_model_dist(ctx);
  } else if (mode == "asp-prepare") {
    mode_asp_prepare(ctx);
  } else if (mode == "resources") {
    mode_resources(ctx);
  } else {
    detail::fail(ErrorCode::InvalidArgument, "unknown mode: " + mode);
  }
  nlohmann::json j;
  j["mode"] = mode;
  j["files"] = ctx.files;
  ExperimentResult result;
  result.files_written = ctx.files;
  result.summary_json = j.dump(2);
  return result;
}

}  // namespace sqdaa
