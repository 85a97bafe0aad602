// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/sqdaa_c.h"

#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "sqdaa/analytics.hpp"
#include "sqdaa/driver.hpp"
#include "sqdaa/error.hpp"
#include "sqdaa/experiments.hpp"
#include "sqdaa/resources.hpp"
#include "sqdaa/version.hpp"

struct sqdaa_hamiltonian {
  sqdaa::PauliHamiltonian value;
};

struct sqdaa_state {
  sqdaa::StateVector value;
};

struct sqdaa_run_record {
  sqdaa::RunRecord value;
  std::string termination;
};

namespace {

thread_local std::string g_last_error;

sqdaa_status status_of(const sqdaa::Error& e) {
  using sqdaa::ErrorCode;
  switch (e.code()) {
    case ErrorCode::InvalidArgument:
      return SQDAA_ERR_INVALID_ARGUMENT;
    case ErrorCode::ParseError:
      return SQDAA_ERR_PARSE;
    case ErrorCode::DimensionMismatch:
      return SQDAA_ERR_DIMENSION;
    case ErrorCode::NumericError:
      return SQDAA_ERR_NUMERIC;
    case ErrorCode::IoError:
      return SQDAA_ERR_IO;
    case ErrorCode::RuntimeError:
      return SQDAA_ERR_RUNTIME;
  }
  return SQDAA_ERR_RUNTIME;
}

template <typename Fn>
sqdaa_status guarded(Fn&& fn) {
  try {
    fn();
    return SQDAA_OK;
  } catch (const sqdaa::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SQDAA_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SQDAA_ERR_RUNTIME;
  }
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sqdaa::DistributionSpec make_spec(const char* kind, double parameter) {
  sqdaa::DistributionSpec spec;
  spec.kind = sqdaa::model_kind_from_name(kind);
  spec.parameter = parameter;
  spec.num_qubits = 30;  // closed forms only consult kind/parameter
  return spec;
}

sqdaa_status require_c(bool cond, const char* message) {
  if (cond) return SQDAA_OK;
  g_last_error = message;
  return SQDAA_ERR_INVALID_ARGUMENT;
}

sqdaa::DriverConfig to_cpp_config(const sqdaa_driver_config& cfg) {
  sqdaa::DriverConfig out;
  out.shots_aa_it = cfg.shots_aa_it;
  out.direct_batch = cfg.direct_batch;
  out.f_target = cfg.f_target;
  out.tau = cfg.tau;
  out.epsilon = cfg.epsilon;
  out.max_iterations = cfg.max_iterations;
  out.seed = cfg.seed;
  out.reference_energy = cfg.reference_energy;
  switch (cfg.stop_mode) {
    case 0:
      out.stop_mode = sqdaa::StopMode::EnergyConvergence;
      break;
    case 1:
      out.stop_mode = sqdaa::StopMode::ReferenceEnergy;
      break;
    case 2:
      out.stop_mode = sqdaa::StopMode::CollectTopM;
      break;
    default:
      sqdaa::detail::fail(sqdaa::ErrorCode::InvalidArgument,
                          "stop_mode must be 0, 1 or 2");
  }
  out.target_m = cfg.target_m;
  out.max_total_shots = cfg.max_total_shots;
  out.adapt_max_probes = cfg.adapt_max_probes;
  out.exact_sampling = cfg.exact_sampling != 0;
  return out;
}

}  // namespace

extern "C" {

const char* sqdaa_version(void) { return sqdaa::kVersion; }

const char* sqdaa_last_error(void) { return g_last_error.c_str(); }

void sqdaa_string_free(char* s) { delete[] s; }

sqdaa_status sqdaa_hamiltonian_parse(const char* text,
                                     sqdaa_hamiltonian** out) {
  if (auto rc = require_c(text && out, "null argument")) return rc;
  return guarded([&] {
    *out = new sqdaa_hamiltonian{sqdaa::parse_hamiltonian(std::string(text))};
  });
}

sqdaa_status sqdaa_hamiltonian_read(const char* path, sqdaa_hamiltonian** out) {
  if (auto rc = require_c(path && out, "null argument")) return rc;
  return guarded([&] {
    *out = new sqdaa_hamiltonian{sqdaa::read_hamiltonian_file(path)};
  });
}

void sqdaa_hamiltonian_free(sqdaa_hamiltonian* h) { delete h; }

int sqdaa_hamiltonian_num_qubits(const sqdaa_hamiltonian* h) {
  return h ? h->value.num_qubits() : 0;
}

int64_t sqdaa_hamiltonian_num_terms(const sqdaa_hamiltonian* h) {
  return h ? static_cast<int64_t>(h->value.term_count()) : 0;
}

int64_t sqdaa_hamiltonian_reduced_terms(const sqdaa_hamiltonian* h) {
  return h ? static_cast<int64_t>(sqdaa::reduced_term_count(h->value)) : 0;
}

double sqdaa_hamiltonian_coeff_norm(const sqdaa_hamiltonian* h) {
  return h ? h->value.coefficient_norm() : 0.0;
}

sqdaa_status sqdaa_hamiltonian_matrix_element(const sqdaa_hamiltonian* h,
                                              uint64_t z, uint64_t z_prime,
                                              double* re, double* im) {
  if (auto rc = require_c(h && re && im, "null argument")) return rc;
  return guarded([&] {
    const int n = h->value.num_qubits();
    const sqdaa::Complex e = sqdaa::matrix_element(
        h->value, sqdaa::Bitstring(z, n), sqdaa::Bitstring(z_prime, n));
    *re = e.real();
    *im = e.imag();
  });
}

sqdaa_status sqdaa_hamiltonian_to_text(const sqdaa_hamiltonian* h,
                                       char** out) {
  if (auto rc = require_c(h && out, "null argument")) return rc;
  return guarded([&] { *out = copy_string(h->value.to_text()); });
}

sqdaa_status sqdaa_state_parse(const char* text, int num_qubits,
                               sqdaa_state** out) {
  if (auto rc = require_c(text && out, "null argument")) return rc;
  return guarded([&] {
    *out = new sqdaa_state{sqdaa::load_state(std::string(text), num_qubits)};
  });
}

sqdaa_status sqdaa_state_read(const char* path, int num_qubits,
                              sqdaa_state** out) {
  if (auto rc = require_c(path && out, "null argument")) return rc;
  return guarded([&] {
    *out = new sqdaa_state{sqdaa::read_state_file(path, num_qubits)};
  });
}

sqdaa_status sqdaa_state_model(const char* kind, double parameter,
                               int num_qubits, sqdaa_state** out) {
  if (auto rc = require_c(kind && out, "null argument")) return rc;
  return guarded([&] {
    *out = new sqdaa_state{sqdaa::model_state(
        sqdaa::model_kind_from_name(kind), parameter, num_qubits)};
  });
}

void sqdaa_state_free(sqdaa_state* s) { delete s; }

int sqdaa_state_num_qubits(const sqdaa_state* s) {
  return s ? s->value.num_qubits() : 0;
}

double sqdaa_state_probability(const sqdaa_state* s, uint64_t z) {
  if (!s || z >= s->value.dimension()) return 0.0;
  return s->value.probability(z);
}

sqdaa_status sqdaa_state_to_text(const sqdaa_state* s, char** out) {
  if (auto rc = require_c(s && out, "null argument")) return rc;
  return guarded([&] { *out = copy_string(sqdaa::state_to_text(s->value)); });
}

sqdaa_status sqdaa_state_expectation(const sqdaa_state* s,
                                     const sqdaa_hamiltonian* h, double* out) {
  if (auto rc = require_c(s && h && out, "null argument")) return rc;
  return guarded([&] { *out = sqdaa::expectation(s->value, h->value); });
}

sqdaa_status sqdaa_state_sample_csv(const sqdaa_state* s, uint64_t shots,
                                    uint64_t seed, char** out) {
  if (auto rc = require_c(s && out, "null argument")) return rc;
  return guarded([&] {
    const sqdaa::SampleResult result = sqdaa::sample(s->value, shots, seed);
    *out = copy_string(result.to_csv(s->value.num_qubits()));
  });
}

sqdaa_status sqdaa_state_apply_aa(const sqdaa_state* s,
                                  const uint64_t* members, size_t num_members,
                                  uint64_t steps, sqdaa_state** out) {
  if (auto rc = require_c(s && members && out && num_members > 0,
                          "null argument or empty member list")) {
    return rc;
  }
  return guarded([&] {
    std::vector<sqdaa::Bitstring> set;
    set.reserve(num_members);
    for (size_t i = 0; i < num_members; ++i) {
      set.emplace_back(members[i], s->value.num_qubits());
    }
    *out = new sqdaa_state{sqdaa::apply_standard_aa(
        s->value, sqdaa::ReductionSet::from_state(s->value, std::move(set)),
        steps)};
  });
}

void sqdaa_driver_config_init(sqdaa_driver_config* cfg) {
  if (!cfg) return;
  const sqdaa::DriverConfig defaults;
  cfg->shots_aa_it = defaults.shots_aa_it;
  cfg->direct_batch = defaults.direct_batch;
  cfg->f_target = defaults.f_target;
  cfg->tau = defaults.tau;
  cfg->epsilon = defaults.epsilon;
  cfg->max_iterations = defaults.max_iterations;
  cfg->seed = defaults.seed;
  cfg->reference_energy = defaults.reference_energy;
  cfg->stop_mode = 0;
  cfg->target_m = defaults.target_m;
  cfg->max_total_shots = defaults.max_total_shots;
  cfg->adapt_max_probes = defaults.adapt_max_probes;
  cfg->exact_sampling = 0;
}

sqdaa_status sqdaa_run_sqdaa(const sqdaa_hamiltonian* h,
                             const sqdaa_state* state0,
                             const sqdaa_driver_config* cfg,
                             sqdaa_run_record** out) {
  if (auto rc = require_c(state0 && cfg && out, "null argument")) return rc;
  return guarded([&] {
    sqdaa::RunRecord rec = sqdaa::run_sqdaa(h ? &h->value : nullptr,
                                            state0->value, to_cpp_config(*cfg));
    auto* handle = new sqdaa_run_record{std::move(rec), {}};
    handle->termination = sqdaa::termination_name(handle->value.termination);
    *out = handle;
  });
}

sqdaa_status sqdaa_run_sqd(const sqdaa_hamiltonian* h,
                           const sqdaa_state* state0,
                           const sqdaa_driver_config* cfg,
                           sqdaa_run_record** out) {
  if (auto rc = require_c(state0 && cfg && out, "null argument")) return rc;
  return guarded([&] {
    sqdaa::RunRecord rec = sqdaa::run_sqd(h ? &h->value : nullptr,
                                          state0->value, to_cpp_config(*cfg));
    auto* handle = new sqdaa_run_record{std::move(rec), {}};
    handle->termination = sqdaa::termination_name(handle->value.termination);
    *out = handle;
  });
}

void sqdaa_run_record_free(sqdaa_run_record* rec) { delete rec; }

double sqdaa_run_record_energy(const sqdaa_run_record* rec) {
  return rec ? rec->value.final_energy
             : std::numeric_limits<double>::quiet_NaN();
}

uint64_t sqdaa_run_record_q_tot(const sqdaa_run_record* rec) {
  return rec ? rec->value.q_tot : 0;
}

uint64_t sqdaa_run_record_shots(const sqdaa_run_record* rec) {
  return rec ? rec->value.total_shots : 0;
}

int64_t sqdaa_run_record_ledger_size(const sqdaa_run_record* rec) {
  return rec ? static_cast<int64_t>(rec->value.ledger.entries.size()) : 0;
}

const char* sqdaa_run_record_termination(const sqdaa_run_record* rec) {
  return rec ? rec->termination.c_str() : "";
}

sqdaa_status sqdaa_run_record_to_json(const sqdaa_run_record* rec,
                                      char** out) {
  if (auto rc = require_c(rec && out, "null argument")) return rc;
  return guarded([&] { *out = copy_string(rec->value.to_json()); });
}

sqdaa_status sqdaa_run_record_trace_csv(const sqdaa_run_record* rec,
                                        char** out) {
  if (auto rc = require_c(rec && out, "null argument")) return rc;
  return guarded([&] { *out = copy_string(rec->value.trace_csv()); });
}

sqdaa_status sqdaa_analytic_steps(const char* kind, double parameter,
                                  uint64_t k, uint64_t* out) {
  if (auto rc = require_c(kind && out, "null argument")) return rc;
  return guarded(
      [&] { *out = sqdaa::analytic_steps(make_spec(kind, parameter), k); });
}

sqdaa_status sqdaa_qtot_sqd(const char* kind, double parameter, uint64_t m,
                            double p_fail, double* out) {
  if (auto rc = require_c(kind && out, "null argument")) return rc;
  return guarded(
      [&] { *out = sqdaa::qtot_sqd(make_spec(kind, parameter), m, p_fail); });
}

sqdaa_status sqdaa_qtot_sqdaa(const char* kind, double parameter, uint64_t m,
                              uint64_t shots_aa_it, double p_fail,
                              double* q_tot, uint64_t* m_star, double* q_aa,
                              double* q_dir) {
  if (auto rc = require_c(kind && q_tot && m_star && q_aa && q_dir,
                          "null argument")) {
    return rc;
  }
  return guarded([&] {
    const sqdaa::QtotSqdaaResult r =
        sqdaa::qtot_sqdaa(make_spec(kind, parameter), m, shots_aa_it, p_fail);
    *q_tot = r.q_tot;
    *m_star = r.m_star;
    *q_aa = r.q_aa;
    *q_dir = r.q_dir;
  });
}

sqdaa_status sqdaa_ratio_curve_csv(const char* kind, double parameter,
                                   uint64_t m_min, uint64_t m_max,
                                   uint64_t shots_aa_it, double p_fail,
                                   char** out) {
  if (auto rc = require_c(kind && out, "null argument")) return rc;
  return guarded([&] {
    *out = copy_string(sqdaa::ratio_curve(make_spec(kind, parameter), m_min,
                                          m_max, shots_aa_it, p_fail)
                           .to_csv());
  });
}

sqdaa_status sqdaa_sk_tcount(uint64_t n_rot, double eps_tot, uint64_t* out) {
  if (auto rc = require_c(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = sqdaa::sk_tcount(n_rot, eps_tot); });
}

sqdaa_status sqdaa_ucj_counts(int num_qubits, int layers, uint64_t* rotations,
                              uint64_t* depth) {
  if (auto rc = require_c(rotations && depth, "null argument")) return rc;
  return guarded([&] {
    const sqdaa::GateCounts c = sqdaa::ucj_counts(num_qubits, layers);
    *rotations = c.rotations;
    *depth = c.rotation_depth;
  });
}

sqdaa_status sqdaa_asp_counts(const sqdaa_hamiltonian* h, uint64_t reps,
                              uint64_t steps, uint64_t* rotations,
                              uint64_t* depth) {
  if (auto rc = require_c(h && rotations && depth, "null argument")) return rc;
  return guarded([&] {
    const sqdaa::GateCounts c = sqdaa::asp_counts(h->value, reps, steps);
    *rotations = c.rotations;
    *depth = c.rotation_depth;
  });
}

sqdaa_status sqdaa_cnnot_tcount(int n, uint64_t* out) {
  if (auto rc = require_c(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = sqdaa::cnnot_tcount(n); });
}

sqdaa_status sqdaa_qubitization_mu(double lambda, double delta_e,
                                   uint64_t* out) {
  if (auto rc = require_c(out != nullptr, "null argument")) return rc;
  return guarded([&] { *out = sqdaa::qubitization_mu(lambda, delta_e); });
}

sqdaa_status sqdaa_iqpe_trotter_json(const sqdaa_hamiltonian* h, double c_gs,
                                     double delta_e_budget,
                                     double c_gs_overlap,
                                     uint64_t prep_t_count,
                                     uint64_t prep_t_depth, double confidence,
                                     char** out) {
  if (auto rc = require_c(h && out, "null argument")) return rc;
  return guarded([&] {
    *out = copy_string(
        sqdaa::iqpe_trotter_optimize(h->value, c_gs, delta_e_budget,
                                     c_gs_overlap, prep_t_count, prep_t_depth,
                                     confidence)
            .to_json());
  });
}

sqdaa_status sqdaa_iqpe_qubitization_json(const sqdaa_hamiltonian* h,
                                          double delta_e_budget,
                                          double c_gs_overlap,
                                          uint64_t prep_t_count,
                                          uint64_t prep_t_depth,
                                          double confidence, char** out) {
  if (auto rc = require_c(h && out, "null argument")) return rc;
  return guarded([&] {
    *out = copy_string(
        sqdaa::iqpe_qubitization_counts(h->value, delta_e_budget, c_gs_overlap,
                                        prep_t_count, prep_t_depth, confidence)
            .to_json());
  });
}

sqdaa_status sqdaa_fit_trotter_json(const sqdaa_hamiltonian* h,
                                    const double* dtau_grid, size_t grid_len,
                                    double total_time, char** out) {
  if (auto rc = require_c(h && dtau_grid && out && grid_len > 0,
                          "null argument or empty grid")) {
    return rc;
  }
  return guarded([&] {
    const std::vector<double> grid(dtau_grid, dtau_grid + grid_len);
    *out = copy_string(
        sqdaa::fit_trotter_constant(h->value, grid, total_time).to_json());
  });
}

sqdaa_status sqdaa_pipeline_report_json(const sqdaa_run_record* rec,
                                        const sqdaa_hamiltonian* h,
                                        int num_qubits, const char* prep_kind,
                                        int ucj_layers, uint64_t asp_reps,
                                        uint64_t asp_steps, double eps_tot,
                                        int include_zero_reflection,
                                        char** out) {
  if (auto rc = require_c(rec && prep_kind && out, "null argument")) return rc;
  return guarded([&] {
    sqdaa::PrepSpec prep;
    const std::string kind(prep_kind);
    if (kind == "ucj") {
      prep = sqdaa::make_ucj_prep(num_qubits, ucj_layers, eps_tot);
    } else if (kind == "asp") {
      sqdaa::require(h != nullptr, sqdaa::ErrorCode::InvalidArgument,
                     "asp prep model needs a hamiltonian");
      prep = sqdaa::make_asp_prep(h->value, asp_reps, asp_steps, eps_tot);
    } else {
      sqdaa::detail::fail(sqdaa::ErrorCode::InvalidArgument,
                          "unknown prep model: " + kind);
    }
    sqdaa::RunResourceInput input;
    input.num_qubits = num_qubits;
    bool amplified = false;
    for (const auto& e : rec->value.plan.entries) {
      input.entries.push_back({e.steps, e.set_size, e.shots});
      if (e.steps > 0) amplified = true;
    }
    if (rec->value.plan.direct_shots > 0) {
      input.entries.push_back({rec->value.plan.direct_steps,
                               rec->value.ledger.entries.size(),
                               rec->value.plan.direct_shots});
      if (rec->value.plan.direct_steps > 0) amplified = true;
    }
    input.pipeline = amplified ? "sqd-aa" : "sqd";
    *out = copy_string(
        sqdaa::pipeline_report(input, prep, include_zero_reflection != 0)
            .to_json());
  });
}

sqdaa_status sqdaa_run_experiment(const char* config_text,
                                  const char* output_dir,
                                  char** summary_json) {
  if (auto rc = require_c(config_text && output_dir && summary_json,
                          "null argument")) {
    return rc;
  }
  return guarded([&] {
    const sqdaa::Config cfg = sqdaa::Config::parse(config_text);
    const sqdaa::ExperimentResult result =
        sqdaa::run_experiment(cfg, output_dir);
    *summary_json = copy_string(result.summary_json);
  });
}

}  // extern "C"
