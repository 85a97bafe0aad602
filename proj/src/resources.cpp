// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/resources.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "sqdaa/numerics.hpp"

namespace sqdaa {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t ceil_to_u64(double v) {
  require(v >= 0.0 && v < 1.8e19, ErrorCode::NumericError,
          "gate count out of range");
  return static_cast<std::uint64_t>(std::ceil(v));
}

std::uint64_t ceil_log2(std::uint64_t v) {
  require(v >= 1, ErrorCode::InvalidArgument, "ceil_log2 of zero");
  std::uint64_t bits = std::bit_width(v - 1);
  return v == 1 ? 0 : bits;
}

}  // namespace

std::uint64_t sk_tcount(std::uint64_t n_rot, double eps_tot) {
  require(n_rot >= 1, ErrorCode::InvalidArgument,
          "rotation count must be >= 1");
  require(eps_tot > 0.0, ErrorCode::InvalidArgument,
          "synthesis error must be positive");
  const double v =
      1.15 * std::log2(static_cast<double>(n_rot) / eps_tot) + 9.2;
  return ceil_to_u64(v);
}

SynthesisBudget make_synthesis_budget(std::uint64_t n_rot, double eps_tot) {
  return {n_rot, eps_tot, sk_tcount(n_rot, eps_tot)};
}

GateCounts ucj_counts(int num_qubits, int layers) {
  require(num_qubits >= 2 && num_qubits % 2 == 0, ErrorCode::InvalidArgument,
          "orbital-rotation ansatz needs an even qubit count >= 2");
  require(layers >= 1, ErrorCode::InvalidArgument, "layers must be >= 1");
  const std::uint64_t n = static_cast<std::uint64_t>(num_qubits);
  const std::uint64_t l = static_cast<std::uint64_t>(layers);
  GateCounts c;
  c.rotations = l * (2 * (n + n * (n / 2 - 1)) + n + 3 * (n / 2) * (n - 1));
  c.rotation_depth = l * (2 * (1 + n / 2) + 1 + 3 * n);
  return c;
}

GateCounts asp_counts(const PauliHamiltonian& h, std::uint64_t reps,
                      std::uint64_t steps) {
  require(reps >= 1 && steps >= 1, ErrorCode::InvalidArgument,
          "reps and steps must be >= 1");
  GateCounts c;
  c.rotations = reduced_term_count(h) * reps * steps;
  c.rotation_depth = c.rotations;  // nothing parallelizes in the sweep
  return c;
}

std::uint64_t cnnot_tcount(int n) {
  require(n >= 2, ErrorCode::InvalidArgument,
          "multi-controlled NOT cost formula needs n >= 2");
  return 4ull * static_cast<std::uint64_t>(n) - 6ull;
}

std::uint64_t PrepSpec::t_count() const {
  return rotations.rotations * sk_tcount(rotations.rotations, eps_tot);
}

std::uint64_t PrepSpec::t_depth() const {
  return rotations.rotation_depth * sk_tcount(rotations.rotations, eps_tot);
}

PrepSpec make_ucj_prep(int num_qubits, int layers, double eps_tot) {
  PrepSpec spec;
  spec.name = "ucj(" + std::to_string(num_qubits) + "," +
              std::to_string(layers) + ")";
  spec.rotations = ucj_counts(num_qubits, layers);
  spec.eps_tot = eps_tot;
  return spec;
}

PrepSpec make_asp_prep(const PauliHamiltonian& h, std::uint64_t reps,
                       std::uint64_t steps, double eps_tot) {
  PrepSpec spec;
  spec.name = "asp(" + std::to_string(reps) + "," + std::to_string(steps) + ")";
  spec.rotations = asp_counts(h, reps, steps);
  spec.eps_tot = eps_tot;
  return spec;
}

std::string ResourceReport::to_json() const {
  nlohmann::json j;
  j["pipeline"] = pipeline;
  j["t_count_deepest"] = t_count_deepest;
  j["t_depth_deepest"] = t_depth_deepest;
  j["t_count_total"] = t_count_total;
  j["t_depth_total"] = t_depth_total;
  j["shots"] = shots;
  j["ancillas"] = ancillas;
  j["parameters"] = parameters;
  if (!ancilla_registers.empty()) j["ancilla_registers"] = ancilla_registers;
  return j.dump(2);
}

std::string TrotterErrorModel::to_json() const {
  nlohmann::json j;
  j["c_gs"] = c_gs;
  j["exponent"] = exponent;
  j["r_squared"] = r_squared;
  j["exact"] = exact;
  j["exponent_in_range"] = exponent_in_range;
  j["fit_ok"] = fit_ok;
  j["samples"] = nlohmann::json::array();
  for (const auto& [dtau, de] : samples) {
    j["samples"].push_back({{"dtau", dtau}, {"delta_e", de}});
  }
  return j.dump(2);
}

namespace {

Eigen::MatrixXcd dense_to_eigen(const DenseMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) =
          m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  return a;
}

Eigen::MatrixXcd pauli_exponential_dense(const PauliTerm& term, double dt) {
  // exp(-i c P dt) = cos(c dt) I - i sin(c dt) P, since P^2 = I.
  PauliHamiltonian unit_string(term.string.num_qubits(), {{1.0, term.string}});
  const Eigen::MatrixXcd p = dense_to_eigen(dense_matrix(unit_string));
  const double phi = term.coefficient * dt;
  return std::cos(phi) * Eigen::MatrixXcd::Identity(p.rows(), p.cols()) -
         std::complex<double>(0, std::sin(phi)) * p;
}

Eigen::MatrixXcd matrix_power(Eigen::MatrixXcd base, std::uint64_t e) {
  Eigen::MatrixXcd acc =
      Eigen::MatrixXcd::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

TrotterErrorModel fit_trotter_constant(const PauliHamiltonian& h,
                                       const std::vector<double>& dtau_grid,
                                       double total_time) {
  require(h.num_qubits() <= 10, ErrorCode::InvalidArgument,
          "dense product-formula fit limited to n <= 10");
  require(dtau_grid.size() >= 3, ErrorCode::InvalidArgument,
          "need at least 3 time steps for a fit");
  require(total_time > 0.0, ErrorCode::InvalidArgument,
          "total time must be positive");

  const DenseMatrix hd = dense_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> hsolver(dense_to_eigen(hd));
  require(hsolver.info() == Eigen::Success, ErrorCode::NumericError,
          "hamiltonian eigensolve failed");
  const double e_gs = hsolver.eigenvalues()(0);
  const Eigen::VectorXcd gs = hsolver.eigenvectors().col(0);

  const auto dim = static_cast<Eigen::Index>(hd.dim);

  // Per-term dense factors at half the time step get rebuilt per grid point;
  // sizes here are <= 1024 so this stays cheap with binary powering.
  TrotterErrorModel model;
  std::vector<std::uint64_t> seen_steps;
  for (double dtau_req : dtau_grid) {
    require(dtau_req > 0.0, ErrorCode::InvalidArgument,
            "time step must be positive");
    const std::uint64_t s = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::llround(total_time / dtau_req)));
    if (std::find(seen_steps.begin(), seen_steps.end(), s) !=
        seen_steps.end()) {
      continue;
    }
    seen_steps.push_back(s);
    const double dtau = total_time / static_cast<double>(s);

    Eigen::MatrixXcd forward = Eigen::MatrixXcd::Identity(dim, dim);
    for (const auto& term : h.terms()) {
      forward = forward * pauli_exponential_dense(term, dtau / 2.0);
    }
    Eigen::MatrixXcd backward = Eigen::MatrixXcd::Identity(dim, dim);
    for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
      backward = backward * pauli_exponential_dense(*it, dtau / 2.0);
    }
    const Eigen::MatrixXcd u = matrix_power(forward * backward, s);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> usolver(u);
    require(usolver.info() == Eigen::Success, ErrorCode::NumericError,
            "unitary eigensolve failed");
    Eigen::Index best = 0;
    double best_overlap = -1.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double ov = std::norm(usolver.eigenvectors().col(i).dot(gs));
      if (ov > best_overlap) {
        best_overlap = ov;
        best = i;
      }
    }
    // Unwrap the eigenphase relative to the exact ground energy: with
    // U ~ e^{-iEt}, E_eff = E_gs - arg(mu e^{i E_gs t}) / t.
    const std::complex<double> mu = usolver.eigenvalues()(best);
    const double e_eff =
        e_gs - std::arg(mu * std::exp(std::complex<double>(0, e_gs * total_time))) /
                   total_time;
    model.samples.push_back({dtau, std::abs(e_eff - e_gs)});
  }

  const double noise_floor =
      1e-12 * std::max(1.0, h.coefficient_norm());
  std::vector<double> log_dtau, log_de;
  double c_sum = 0.0;
  for (const auto& [dtau, de] : model.samples) {
    if (de <= noise_floor) continue;
    log_dtau.push_back(std::log(dtau));
    log_de.push_back(std::log(de));
    c_sum += de / (dtau * dtau);
  }
  if (log_dtau.size() < 3) {
    model.exact = true;
    return model;
  }
  const LinearFit fit = linear_fit(log_dtau, log_de);
  model.exponent = fit.slope;
  model.r_squared = fit.r_squared;
  model.c_gs = c_sum / static_cast<double>(log_dtau.size());
  model.exponent_in_range = fit.slope >= 1.8 && fit.slope <= 2.2;
  model.fit_ok = fit.r_squared >= 0.9;
  return model;
}

ExponentialFit fit_exponential(
    const std::vector<std::pair<double, double>>& xy) {
  std::vector<double> x, logy;
  for (const auto& [xi, yi] : xy) {
    require(yi > 0.0, ErrorCode::InvalidArgument,
            "exponential fit needs positive values");
    x.push_back(xi);
    logy.push_back(std::log(yi));
  }
  const LinearFit fit = linear_fit(x, logy);
  return {std::exp(fit.intercept), fit.slope, fit.r_squared};
}

std::uint64_t phase_majority_shots(double c_gs_overlap, double confidence) {
  require(c_gs_overlap > kPi * kPi / 16.0 && c_gs_overlap <= 1.0,
          ErrorCode::InvalidArgument,
          "ground-state overlap must exceed pi^2/16 for the majority vote "
          "to converge");
  const double p = 8.0 / (kPi * kPi) * c_gs_overlap;
  return majority_vote_shots(p, confidence);
}

namespace detail {

namespace {
double n_sk_real(double l_reduced, double c_gs, double de_sk, double de_ts) {
  return 1.15 * std::log2(4.0 * l_reduced * 2.0 * kPi * std::sqrt(c_gs) /
                          (de_sk * std::sqrt(de_ts))) +
         9.2;
}
}  // namespace

double iqpe_trotter_repetitions(double c_gs, double de_iqpe, double de_ts) {
  return 2.0 * kPi * std::sqrt(c_gs) / (de_iqpe * std::sqrt(de_ts));
}

double iqpe_trotter_cost(double l_reduced, double c_gs, double de_ts,
                         double de_iqpe, double de_sk) {
  const double n_sk = std::ceil(n_sk_real(l_reduced, c_gs, de_sk, de_ts));
  return 4.0 * l_reduced * n_sk * iqpe_trotter_repetitions(c_gs, de_iqpe,
                                                           de_ts);
}

}  // namespace detail

ResourceReport iqpe_trotter_optimize(const PauliHamiltonian& h, double c_gs,
                                     double delta_e_budget,
                                     double c_gs_overlap,
                                     std::uint64_t prep_t_count,
                                     std::uint64_t prep_t_depth,
                                     double confidence) {
  require(delta_e_budget > 0.0, ErrorCode::InvalidArgument,
          "energy budget must be positive");
  require(c_gs > 0.0, ErrorCode::InvalidArgument,
          "error constant must be positive");
  const double l_reduced = static_cast<double>(reduced_term_count(h));

  // The cost is monotone decreasing in every error component, so the optimum
  // saturates de_ts + de_iqpe + de_sk = budget. Scan a logarithmic grid of
  // simplex fractions, then refine with a pattern search.
  const auto eval = [&](double f_ts, double f_iqpe) {
    const double f_sk = 1.0 - f_ts - f_iqpe;
    if (f_ts <= 0.0 || f_iqpe <= 0.0 || f_sk <= 1e-12) {
      return std::numeric_limits<double>::infinity();
    }
    return detail::iqpe_trotter_cost(l_reduced, c_gs, f_ts * delta_e_budget,
                                     f_iqpe * delta_e_budget,
                                     f_sk * delta_e_budget);
  };

  constexpr int kGrid = 120;  // > 10^4 audited points
  double best_cost = std::numeric_limits<double>::infinity();
  double best_ts = 1.0 / 3.0, best_iqpe = 1.0 / 3.0;
  for (int i = 0; i < kGrid; ++i) {
    const double f_ts = std::pow(10.0, -4.0 + 4.0 * (i + 0.5) / kGrid);
    for (int j = 0; j < kGrid; ++j) {
      const double f_iqpe = std::pow(10.0, -4.0 + 4.0 * (j + 0.5) / kGrid);
      const double c = eval(f_ts, f_iqpe);
      if (c < best_cost) {
        best_cost = c;
        best_ts = f_ts;
        best_iqpe = f_iqpe;
      }
    }
  }
  require(std::isfinite(best_cost), ErrorCode::NumericError,
          "no feasible error split found");
  // Compass pattern search in log10 fraction space.
  double step = 0.1;
  while (step > 1e-6) {
    bool improved = false;
    const double candidates[4][2] = {{step, 0.0}, {-step, 0.0},
                                     {0.0, step}, {0.0, -step}};
    for (const auto& d : candidates) {
      const double f_ts = best_ts * std::pow(10.0, d[0]);
      const double f_iqpe = best_iqpe * std::pow(10.0, d[1]);
      const double c = eval(f_ts, f_iqpe);
      if (c < best_cost) {
        best_cost = c;
        best_ts = f_ts;
        best_iqpe = f_iqpe;
        improved = true;
      }
    }
    if (!improved) step /= 2.0;
  }

  const double de_ts = best_ts * delta_e_budget;
  const double de_iqpe = best_iqpe * delta_e_budget;
  const double de_sk = (1.0 - best_ts - best_iqpe) * delta_e_budget;
  require(de_ts + de_iqpe + de_sk <= delta_e_budget * (1.0 + 1e-12),
          ErrorCode::NumericError, "optimizer violated the energy budget");

  const double reps = detail::iqpe_trotter_repetitions(c_gs, de_iqpe, de_ts);
  const std::uint64_t bits = ceil_to_u64(std::log2(reps));
  const std::uint64_t shots = phase_majority_shots(c_gs_overlap, confidence);

  ResourceReport report;
  report.pipeline = "iqpe-trotter";
  report.t_count_deepest = ceil_to_u64(best_cost) + bits * prep_t_count;
  report.t_depth_deepest = ceil_to_u64(best_cost) + bits * prep_t_depth;
  report.t_count_total =
      static_cast<double>(report.t_count_deepest) * static_cast<double>(shots);
  report.t_depth_total =
      static_cast<double>(report.t_depth_deepest) * static_cast<double>(shots);
  report.shots = shots;
  report.ancillas = 1;  // phase readout ancilla
  report.parameters = {
      {"l_reduced", l_reduced},
      {"c_gs", c_gs},
      {"delta_e_budget", delta_e_budget},
      {"delta_e_ts", de_ts},
      {"delta_e_iqpe", de_iqpe},
      {"delta_e_sk", de_sk},
      {"n_sk", std::ceil(detail::n_sk_real(l_reduced, c_gs, de_sk, de_ts))},
      {"repetitions", reps},
      {"phase_bits", static_cast<double>(bits)},
      {"prep_t_count", static_cast<double>(prep_t_count)},
      {"c_gs_overlap", c_gs_overlap},
      {"per_shot_success", 8.0 / (kPi * kPi) * c_gs_overlap},
      {"confidence", confidence},
  };
  return report;
}

std::uint64_t qubitization_mu(double lambda, double delta_e) {
  require(lambda > 0.0 && delta_e > 0.0, ErrorCode::InvalidArgument,
          "lambda and delta_e must be positive");
  return ceil_to_u64(std::log2(2.0 * lambda / delta_e) +
                     std::log2(1.0 + delta_e * delta_e /
                                         (4.0 * lambda * lambda)));
}

std::uint64_t qubitization_select_tcount(std::uint64_t l) {
  require(l >= 2, ErrorCode::InvalidArgument,
          "select cost formula needs L >= 2");
  return 4 * l - 4;
}

std::uint64_t qubitization_prepare_tcount(std::uint64_t l, std::uint64_t mu) {
  require(l >= 2, ErrorCode::InvalidArgument,
          "prepare cost formula needs L >= 2");
  const std::uint64_t k = static_cast<std::uint64_t>(std::countr_zero(l));
  const std::uint64_t j = l >> k;
  const std::uint64_t log2j = j == 1 ? 0 : ceil_log2(j);
  return 4 * (l + mu) + 2 * k + 10 * log2j;
}

ResourceReport iqpe_qubitization_counts(const PauliHamiltonian& h,
                                        double delta_e_budget,
                                        double c_gs_overlap,
                                        std::uint64_t prep_t_count,
                                        std::uint64_t prep_t_depth,
                                        double confidence) {
  require(delta_e_budget > 0.0, ErrorCode::InvalidArgument,
          "energy budget must be positive");
  const double lambda = h.coefficient_norm();
  const std::uint64_t l = h.term_count();
  const std::uint64_t mu = qubitization_mu(lambda, delta_e_budget);
  const double reps = 4.0 * kPi * lambda / delta_e_budget;
  const std::uint64_t bits =
      ceil_to_u64(std::log2(2.0 * kPi * lambda / delta_e_budget));

  ResourceReport report;
  report.pipeline = "iqpe-qubitization";
  double walk_t = 0.0, walk_depth = 0.0;
  std::uint64_t lg = 0;
  std::uint64_t k_factor = 0, j_odd = 1, log2j = 0;
  if (l >= 2) {
    lg = ceil_log2(l);
    k_factor = static_cast<std::uint64_t>(std::countr_zero(l));
    j_odd = l >> k_factor;
    log2j = j_odd == 1 ? 0 : ceil_log2(j_odd);
    const double prep_t =
        4.0 * static_cast<double>(l + mu) + 2.0 * static_cast<double>(k_factor) +
        10.0 * static_cast<double>(log2j);
    const double prep_depth =
        2.0 * static_cast<double>(l + mu) + 2.0 * static_cast<double>(k_factor) +
        6.0 * static_cast<double>(log2j);
    const double select_t = 4.0 * static_cast<double>(l) - 4.0;
    const double select_depth = 2.0 * static_cast<double>(l) - 2.0;
    const double reflection_t = 4.0 * (static_cast<double>(lg) + 1.0) - 6.0;
    const double reflection_depth = 5.0;
    walk_t = 2.0 * prep_t + select_t + reflection_t;
    walk_depth = 2.0 * prep_depth + select_depth + reflection_depth;
    report.ancilla_registers = {
        {"prepare", 1 + 2 * mu + lg},
        {"select_work", lg},
        {"unary_iteration", lg - 1},
        {"reflection", lg - 1},
    };
    report.ancillas = (1 + 2 * mu + 2 * lg) + (lg - 1);
  } else {
    // Single-term degenerate path: the walk operator collapses to one
    // controlled Pauli, which is Clifford.
    report.parameters["degenerate_single_term"] = 1.0;
    report.ancillas = 0;
  }
  report.t_count_deepest = ceil_to_u64(reps * walk_t) + bits * prep_t_count;
  report.t_depth_deepest =
      ceil_to_u64(reps * walk_depth) + bits * prep_t_depth;
  const std::uint64_t shots = phase_majority_shots(c_gs_overlap, confidence);
  report.shots = shots;
  report.t_count_total =
      static_cast<double>(report.t_count_deepest) * static_cast<double>(shots);
  report.t_depth_total =
      static_cast<double>(report.t_depth_deepest) * static_cast<double>(shots);
  report.parameters["lambda"] = lambda;
  report.parameters["term_count"] = static_cast<double>(l);
  report.parameters["mu"] = static_cast<double>(mu);
  report.parameters["repetitions"] = reps;
  report.parameters["phase_bits"] = static_cast<double>(bits);
  report.parameters["k_pow2"] = static_cast<double>(k_factor);
  report.parameters["j_odd"] = static_cast<double>(j_odd);
  report.parameters["delta_e_budget"] = delta_e_budget;
  report.parameters["c_gs_overlap"] = c_gs_overlap;
  report.parameters["confidence"] = confidence;
  report.parameters["prep_t_count"] = static_cast<double>(prep_t_count);
  return report;
}

ResourceReport pipeline_report(const RunResourceInput& run,
                               const PrepSpec& prep,
                               bool include_zero_reflection) {
  require(!run.entries.empty(), ErrorCode::InvalidArgument,
          "run has no circuit entries");
  const std::uint64_t prep_t = prep.t_count();
  const std::uint64_t prep_d = prep.t_depth();
  ResourceReport report;
  report.pipeline = run.pipeline;
  double total_t = 0.0, total_d = 0.0;
  std::uint64_t shots = 0;
  std::uint64_t max_steps = 0;
  for (const auto& e : run.entries) {
    const CircuitTCost cost = aa_circuit_tcost(
        run.num_qubits, std::max<std::uint64_t>(1, e.set_size), e.steps,
        prep_t, prep_d, include_zero_reflection);
    report.t_count_deepest = std::max(report.t_count_deepest, cost.t_count);
    report.t_depth_deepest = std::max(report.t_depth_deepest, cost.t_depth);
    total_t += static_cast<double>(e.shots) * static_cast<double>(cost.t_count);
    total_d += static_cast<double>(e.shots) * static_cast<double>(cost.t_depth);
    shots += e.shots;
    max_steps = std::max(max_steps, e.steps);
  }
  report.t_count_total = total_t;
  report.t_depth_total = total_d;
  report.shots = shots;
  report.ancillas =
      max_steps == 0 ? 0 : static_cast<std::uint64_t>(run.num_qubits) - 1;
  report.parameters = {
      {"prep_t_count", static_cast<double>(prep_t)},
      {"prep_t_depth", static_cast<double>(prep_d)},
      {"prep_rotations", static_cast<double>(prep.rotations.rotations)},
      {"include_zero_reflection", include_zero_reflection ? 1.0 : 0.0},
      {"max_steps", static_cast<double>(max_steps)},
  };
  return report;
}

}  // namespace sqdaa
