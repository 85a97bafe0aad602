// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "sqdaa/sqdaa_c.h"

namespace {

struct StringGuard {
  char* value = nullptr;
  ~StringGuard() { sqdaa_string_free(value); }
  std::string str() const { return value ? value : ""; }
};

}  // namespace

TEST_CASE("version and error strings are available") {
  CHECK(sqdaa_version() != nullptr);
  CHECK(sqdaa_last_error() != nullptr);
}

TEST_CASE("hamiltonian lifecycle across the C boundary") {
  sqdaa_hamiltonian* h = nullptr;
  REQUIRE(sqdaa_hamiltonian_parse("1.0 ZZ\n0.5 XX\n", &h) == SQDAA_OK);
  CHECK(sqdaa_hamiltonian_num_qubits(h) == 2);
  CHECK(sqdaa_hamiltonian_num_terms(h) == 2);
  CHECK(sqdaa_hamiltonian_coeff_norm(h) == doctest::Approx(1.5));

  double re = 0.0, im = 0.0;
  REQUIRE(sqdaa_hamiltonian_matrix_element(h, 1, 2, &re, &im) == SQDAA_OK);
  CHECK(re == doctest::Approx(0.5));
  CHECK(im == doctest::Approx(0.0));

  StringGuard text;
  REQUIRE(sqdaa_hamiltonian_to_text(h, &text.value) == SQDAA_OK);
  sqdaa_hamiltonian* again = nullptr;
  REQUIRE(sqdaa_hamiltonian_parse(text.value, &again) == SQDAA_OK);
  CHECK(sqdaa_hamiltonian_num_terms(again) == 2);
  sqdaa_hamiltonian_free(again);
  sqdaa_hamiltonian_free(h);
}

TEST_CASE("parse failures surface status codes and messages") {
  sqdaa_hamiltonian* h = nullptr;
  CHECK(sqdaa_hamiltonian_parse("1.0 XZ\n2.0 XYZ\n", &h) == SQDAA_ERR_PARSE);
  CHECK(std::strlen(sqdaa_last_error()) > 0);
  CHECK(sqdaa_hamiltonian_parse(nullptr, &h) == SQDAA_ERR_INVALID_ARGUMENT);
  sqdaa_state* s = nullptr;
  CHECK(sqdaa_state_parse("0 2.0\n", 1, &s) == SQDAA_ERR_NUMERIC);
  CHECK(sqdaa_state_model("bogus", 1.0, 4, &s) == SQDAA_ERR_INVALID_ARGUMENT);
}

TEST_CASE("state construction, sampling and amplification") {
  sqdaa_state* s = nullptr;
  REQUIRE(sqdaa_state_model("step", 4.0, 2, &s) == SQDAA_OK);
  CHECK(sqdaa_state_num_qubits(s) == 2);
  CHECK(sqdaa_state_probability(s, 0) == doctest::Approx(0.25));

  StringGuard csv;
  REQUIRE(sqdaa_state_sample_csv(s, 1000, 7, &csv.value) == SQDAA_OK);
  CHECK(csv.str().rfind("bitstring,count\n", 0) == 0);
  StringGuard csv2;
  REQUIRE(sqdaa_state_sample_csv(s, 1000, 7, &csv2.value) == SQDAA_OK);
  CHECK(csv.str() == csv2.str());  // seeded determinism

  const uint64_t members[3] = {1, 2, 3};
  sqdaa_state* rotated = nullptr;
  REQUIRE(sqdaa_state_apply_aa(s, members, 3, 1, &rotated) == SQDAA_OK);
  CHECK(sqdaa_state_probability(rotated, 0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  sqdaa_state_free(rotated);
  sqdaa_state_free(s);
}

TEST_CASE("expectation across the C boundary") {
  sqdaa_hamiltonian* h = nullptr;
  REQUIRE(sqdaa_hamiltonian_parse("1.0 Z\n", &h) == SQDAA_OK);
  sqdaa_state* s = nullptr;
  REQUIRE(sqdaa_state_parse("0 1.0\n", 1, &s) == SQDAA_OK);
  double value = 0.0;
  REQUIRE(sqdaa_state_expectation(s, h, &value) == SQDAA_OK);
  CHECK(value == doctest::Approx(1.0));
  sqdaa_state_free(s);
  sqdaa_hamiltonian_free(h);
}

TEST_CASE("driver round trip through the C API") {
  sqdaa_state* s = nullptr;
  REQUIRE(sqdaa_state_model("exponential", 1.0, 8, &s) == SQDAA_OK);
  sqdaa_driver_config cfg;
  sqdaa_driver_config_init(&cfg);
  cfg.stop_mode = 2;  // collect top m
  cfg.target_m = 8;
  cfg.shots_aa_it = 50;
  cfg.tau = 0.05;
  cfg.seed = 13;

  sqdaa_run_record* aa = nullptr;
  REQUIRE(sqdaa_run_sqdaa(nullptr, s, &cfg, &aa) == SQDAA_OK);
  CHECK(sqdaa_run_record_ledger_size(aa) >= 8);
  CHECK(sqdaa_run_record_q_tot(aa) > 0);
  CHECK(std::string(sqdaa_run_record_termination(aa)) ==
        "target-error-reached");

  sqdaa_run_record* sqd = nullptr;
  REQUIRE(sqdaa_run_sqd(nullptr, s, &cfg, &sqd) == SQDAA_OK);
  CHECK(sqdaa_run_record_q_tot(sqd) == sqdaa_run_record_shots(sqd));

  StringGuard json;
  REQUIRE(sqdaa_run_record_to_json(aa, &json.value) == SQDAA_OK);
  CHECK(json.str().find("\"plan\"") != std::string::npos);
  StringGuard trace;
  REQUIRE(sqdaa_run_record_trace_csv(aa, &trace.value) == SQDAA_OK);
  CHECK(trace.str().rfind("k,s_k,Q_k", 0) == 0);

  StringGuard report;
  REQUIRE(sqdaa_pipeline_report_json(aa, nullptr, 8, "ucj", 2, 0, 0, 1e-4, 1,
                                     &report.value) == SQDAA_OK);
  CHECK(report.str().find("\"pipeline\": \"sqd-aa\"") != std::string::npos);

  sqdaa_run_record_free(aa);
  sqdaa_run_record_free(sqd);
  sqdaa_state_free(s);

  // Energy-based stop without a hamiltonian is rejected.
  sqdaa_state* s2 = nullptr;
  REQUIRE(sqdaa_state_model("exponential", 1.0, 4, &s2) == SQDAA_OK);
  cfg.stop_mode = 0;
  sqdaa_run_record* bad = nullptr;
  CHECK(sqdaa_run_sqdaa(nullptr, s2, &cfg, &bad) ==
        SQDAA_ERR_INVALID_ARGUMENT);
  sqdaa_state_free(s2);
}

TEST_CASE("analytics across the C boundary") {
  uint64_t steps = 0;
  REQUIRE(sqdaa_analytic_steps("exponential", 1.0, 0, &steps) == SQDAA_OK);
  CHECK(steps == 1);
  double q = 0.0;
  REQUIRE(sqdaa_qtot_sqd("exponential", 1.0, 5, 0.1, &q) == SQDAA_OK);
  CHECK(q == doctest::Approx(337.8931692702735));
  double q_tot = 0.0, q_aa = 0.0, q_dir = 0.0;
  uint64_t m_star = 0;
  REQUIRE(sqdaa_qtot_sqdaa("algebraic", 5.0, 30, 1000, 0.1, &q_tot, &m_star,
                           &q_aa, &q_dir) == SQDAA_OK);
  CHECK(q_tot == doctest::Approx(q_aa + q_dir));
  CHECK(m_star >= 1);
  StringGuard csv;
  REQUIRE(sqdaa_ratio_curve_csv("exponential", 1.0, 1, 5, 100, 0.1,
                                &csv.value) == SQDAA_OK);
  CHECK(csv.str().rfind("m,Qtot_sqd", 0) == 0);
}

TEST_CASE("resource formulas across the C boundary") {
  uint64_t v = 0;
  REQUIRE(sqdaa_sk_tcount(100, 1e-4, &v) == SQDAA_OK);
  CHECK(v == 33);
  uint64_t rot = 0, depth = 0;
  REQUIRE(sqdaa_ucj_counts(4, 1, &rot, &depth) == SQDAA_OK);
  CHECK(rot == 38);
  CHECK(depth == 19);
  REQUIRE(sqdaa_cnnot_tcount(3, &v) == SQDAA_OK);
  CHECK(v == 6);
  REQUIRE(sqdaa_qubitization_mu(10.0, 1.6e-3, &v) == SQDAA_OK);
  CHECK(v == 14);
  CHECK(sqdaa_cnnot_tcount(1, &v) == SQDAA_ERR_INVALID_ARGUMENT);

  sqdaa_hamiltonian* h = nullptr;
  REQUIRE(sqdaa_hamiltonian_parse("1.0 ZZ\n0.5 XI\n0.5 IX\n", &h) == SQDAA_OK);
  REQUIRE(sqdaa_asp_counts(h, 2, 5, &rot, &depth) == SQDAA_OK);
  CHECK(rot == depth);

  StringGuard trotter;
  REQUIRE(sqdaa_iqpe_trotter_json(h, 1.0, 1.6e-3, 0.9, 0, 0, 0.99,
                                  &trotter.value) == SQDAA_OK);
  CHECK(trotter.str().find("\"pipeline\": \"iqpe-trotter\"") !=
        std::string::npos);
  StringGuard qubitization;
  REQUIRE(sqdaa_iqpe_qubitization_json(h, 1.6e-3, 0.9, 0, 0, 0.99,
                                       &qubitization.value) == SQDAA_OK);
  CHECK(qubitization.str().find("\"mu\"") != std::string::npos);

  const double grid[5] = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  StringGuard fit;
  REQUIRE(sqdaa_fit_trotter_json(h, grid, 5, 1.0, &fit.value) == SQDAA_OK);
  CHECK(fit.str().find("\"exponent\"") != std::string::npos);
  sqdaa_hamiltonian_free(h);
}

TEST_CASE("experiment orchestration across the C boundary") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sqdaa_capi_experiment";
  fs::remove_all(dir);
  const char* config =
      "mode = model-dist\nmodel.kind = exponential\nmodel.alpha = 1.0\n"
      "model_dist.m_min = 1\nmodel_dist.m_max = 8\n";
  StringGuard summary;
  REQUIRE(sqdaa_run_experiment(config, dir.string().c_str(),
                               &summary.value) == SQDAA_OK);
  CHECK(summary.str().find("curve.csv") != std::string::npos);
  CHECK(fs::exists(dir / "curve.csv"));
  CHECK(sqdaa_run_experiment("mode = bogus\n", dir.string().c_str(),
                             &summary.value) != SQDAA_OK);
}
