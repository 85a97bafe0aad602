/* Copyright (c) 2026 The sqdaa project contributors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C API of the sqdaa shared library. All functionality is exposed through
 * opaque handles and status codes; strings returned through `char**` out
 * parameters are heap-allocated and must be released with sqdaa_string_free.
 * On any non-OK status, sqdaa_last_error() describes the failure for the
 * calling thread.
 */

#ifndef SQDAA_C_H
#define SQDAA_C_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SQDAA_API __declspec(dllexport)
#else
#define SQDAA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sqdaa_status {
  SQDAA_OK = 0,
  SQDAA_ERR_INVALID_ARGUMENT = 1,
  SQDAA_ERR_PARSE = 2,
  SQDAA_ERR_DIMENSION = 3,
  SQDAA_ERR_NUMERIC = 4,
  SQDAA_ERR_IO = 5,
  SQDAA_ERR_RUNTIME = 6,
} sqdaa_status;

typedef struct sqdaa_hamiltonian sqdaa_hamiltonian;
typedef struct sqdaa_state sqdaa_state;
typedef struct sqdaa_run_record sqdaa_run_record;

SQDAA_API const char* sqdaa_version(void);

/* Thread-local message describing the most recent failure. */
SQDAA_API const char* sqdaa_last_error(void);

SQDAA_API void sqdaa_string_free(char* s);

/* ---- Pauli Hamiltonians ------------------------------------------------ */

/* Text format: one "<coefficient> <pauli word>" per line, '#' comments,
 * words over {I,X,Y,Z}, rightmost character acting on qubit 0. */
SQDAA_API sqdaa_status sqdaa_hamiltonian_parse(const char* text,
                                               sqdaa_hamiltonian** out);
SQDAA_API sqdaa_status sqdaa_hamiltonian_read(const char* path,
                                              sqdaa_hamiltonian** out);
SQDAA_API void sqdaa_hamiltonian_free(sqdaa_hamiltonian* h);
SQDAA_API int sqdaa_hamiltonian_num_qubits(const sqdaa_hamiltonian* h);
SQDAA_API int64_t sqdaa_hamiltonian_num_terms(const sqdaa_hamiltonian* h);
SQDAA_API int64_t sqdaa_hamiltonian_reduced_terms(const sqdaa_hamiltonian* h);
SQDAA_API double sqdaa_hamiltonian_coeff_norm(const sqdaa_hamiltonian* h);
SQDAA_API sqdaa_status sqdaa_hamiltonian_matrix_element(
    const sqdaa_hamiltonian* h, uint64_t z, uint64_t z_prime, double* re,
    double* im);
SQDAA_API sqdaa_status sqdaa_hamiltonian_to_text(const sqdaa_hamiltonian* h,
                                                 char** out);

/* ---- Statevectors ------------------------------------------------------ */

/* Amplitude text format: "index real [imag]" per line, zero elsewhere. */
SQDAA_API sqdaa_status sqdaa_state_parse(const char* text, int num_qubits,
                                         sqdaa_state** out);
SQDAA_API sqdaa_status sqdaa_state_read(const char* path, int num_qubits,
                                        sqdaa_state** out);
/* kind: "exponential" (parameter = alpha), "algebraic" (gamma),
 * "step" (m). */
SQDAA_API sqdaa_status sqdaa_state_model(const char* kind, double parameter,
                                         int num_qubits, sqdaa_state** out);
SQDAA_API void sqdaa_state_free(sqdaa_state* s);
SQDAA_API int sqdaa_state_num_qubits(const sqdaa_state* s);
SQDAA_API double sqdaa_state_probability(const sqdaa_state* s, uint64_t z);
SQDAA_API sqdaa_status sqdaa_state_to_text(const sqdaa_state* s, char** out);
SQDAA_API sqdaa_status sqdaa_state_expectation(const sqdaa_state* s,
                                               const sqdaa_hamiltonian* h,
                                               double* out);
/* CSV "bitstring,count" ordered by decreasing count. */
SQDAA_API sqdaa_status sqdaa_state_sample_csv(const sqdaa_state* s,
                                              uint64_t shots, uint64_t seed,
                                              char** out);
/* Standard amplification: s applications of the paired reflections on the
 * prepared state, suppressing the listed basis states. */
SQDAA_API sqdaa_status sqdaa_state_apply_aa(const sqdaa_state* s,
                                            const uint64_t* members,
                                            size_t num_members, uint64_t steps,
                                            sqdaa_state** out);

/* ---- Algorithm drivers ------------------------------------------------- */

typedef struct sqdaa_driver_config {
  uint64_t shots_aa_it;
  uint64_t direct_batch; /* 0: min(10 * shots_aa_it, 10000) */
  double f_target;
  double tau;
  double epsilon;
  uint64_t max_iterations;
  uint64_t seed;
  double reference_energy;
  /* 0 = energy convergence, 1 = reference energy, 2 = collect top m */
  int stop_mode;
  uint64_t target_m;
  uint64_t max_total_shots;
  uint32_t adapt_max_probes;
  int exact_sampling;
} sqdaa_driver_config;

SQDAA_API void sqdaa_driver_config_init(sqdaa_driver_config* cfg);

/* `h` may be NULL in collect-top-m mode. */
SQDAA_API sqdaa_status sqdaa_run_sqdaa(const sqdaa_hamiltonian* h,
                                       const sqdaa_state* state0,
                                       const sqdaa_driver_config* cfg,
                                       sqdaa_run_record** out);
SQDAA_API sqdaa_status sqdaa_run_sqd(const sqdaa_hamiltonian* h,
                                     const sqdaa_state* state0,
                                     const sqdaa_driver_config* cfg,
                                     sqdaa_run_record** out);
SQDAA_API void sqdaa_run_record_free(sqdaa_run_record* rec);
SQDAA_API double sqdaa_run_record_energy(const sqdaa_run_record* rec);
SQDAA_API uint64_t sqdaa_run_record_q_tot(const sqdaa_run_record* rec);
SQDAA_API uint64_t sqdaa_run_record_shots(const sqdaa_run_record* rec);
SQDAA_API int64_t sqdaa_run_record_ledger_size(const sqdaa_run_record* rec);
SQDAA_API const char* sqdaa_run_record_termination(const sqdaa_run_record* rec);
SQDAA_API sqdaa_status sqdaa_run_record_to_json(const sqdaa_run_record* rec,
                                                char** out);
SQDAA_API sqdaa_status sqdaa_run_record_trace_csv(const sqdaa_run_record* rec,
                                                  char** out);

/* ---- Closed-form query-complexity calculators -------------------------- */

SQDAA_API sqdaa_status sqdaa_analytic_steps(const char* kind, double parameter,
                                            uint64_t k, uint64_t* out);
SQDAA_API sqdaa_status sqdaa_qtot_sqd(const char* kind, double parameter,
                                      uint64_t m, double p_fail, double* out);
SQDAA_API sqdaa_status sqdaa_qtot_sqdaa(const char* kind, double parameter,
                                        uint64_t m, uint64_t shots_aa_it,
                                        double p_fail, double* q_tot,
                                        uint64_t* m_star, double* q_aa,
                                        double* q_dir);
SQDAA_API sqdaa_status sqdaa_ratio_curve_csv(const char* kind,
                                             double parameter, uint64_t m_min,
                                             uint64_t m_max,
                                             uint64_t shots_aa_it,
                                             double p_fail, char** out);

/* ---- Fault-tolerant resource models ------------------------------------ */

SQDAA_API sqdaa_status sqdaa_sk_tcount(uint64_t n_rot, double eps_tot,
                                       uint64_t* out);
SQDAA_API sqdaa_status sqdaa_ucj_counts(int num_qubits, int layers,
                                        uint64_t* rotations, uint64_t* depth);
SQDAA_API sqdaa_status sqdaa_asp_counts(const sqdaa_hamiltonian* h,
                                        uint64_t reps, uint64_t steps,
                                        uint64_t* rotations, uint64_t* depth);
SQDAA_API sqdaa_status sqdaa_cnnot_tcount(int n, uint64_t* out);
SQDAA_API sqdaa_status sqdaa_qubitization_mu(double lambda, double delta_e,
                                             uint64_t* out);
SQDAA_API sqdaa_status sqdaa_iqpe_trotter_json(const sqdaa_hamiltonian* h,
                                               double c_gs,
                                               double delta_e_budget,
                                               double c_gs_overlap,
                                               uint64_t prep_t_count,
                                               uint64_t prep_t_depth,
                                               double confidence, char** out);
SQDAA_API sqdaa_status sqdaa_iqpe_qubitization_json(
    const sqdaa_hamiltonian* h, double delta_e_budget, double c_gs_overlap,
    uint64_t prep_t_count, uint64_t prep_t_depth, double confidence,
    char** out);
SQDAA_API sqdaa_status sqdaa_fit_trotter_json(const sqdaa_hamiltonian* h,
                                              const double* dtau_grid,
                                              size_t grid_len,
                                              double total_time, char** out);
/* prep_kind: "ucj" (layers used) or "asp" (reps/steps used). */
SQDAA_API sqdaa_status sqdaa_pipeline_report_json(
    const sqdaa_run_record* rec, const sqdaa_hamiltonian* h, int num_qubits,
    const char* prep_kind, int ucj_layers, uint64_t asp_reps,
    uint64_t asp_steps, double eps_tot, int include_zero_reflection,
    char** out);

/* ---- Experiment orchestration ------------------------------------------ */

/* Runs one experiment described by a "key = value" config text and writes
 * its CSV/JSON outputs under output_dir; returns a JSON summary listing the
 * files written. Identical config + seeds produce byte-identical outputs. */
SQDAA_API sqdaa_status sqdaa_run_experiment(const char* config_text,
                                            const char* output_dir,
                                            char** summary_json);

#ifdef __cplusplus
}
#endif

#endif /* SQDAA_C_H */
