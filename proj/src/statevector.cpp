// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

namespace sqdaa {

namespace {

constexpr double kNormTolerance = 1e-10;
constexpr double kLoadNormTolerance = 1e-6;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

StateVector::StateVector(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  require(num_qubits >= 1 && num_qubits <= 30, ErrorCode::InvalidArgument,
          "statevector qubit count must be in [1, 30]");
  require(amplitudes_.size() == (std::size_t{1} << num_qubits),
          ErrorCode::DimensionMismatch,
          "amplitude count must equal 2^num_qubits");
  check_normalized();
}

StateVector StateVector::computational_basis(int num_qubits,
                                             std::uint64_t value) {
  std::vector<Complex> amps(std::size_t{1} << num_qubits, Complex{0, 0});
  require(value < amps.size(), ErrorCode::InvalidArgument,
          "basis state out of range");
  amps[value] = Complex{1, 0};
  return StateVector(num_qubits, std::move(amps));
}

double StateVector::probability(std::uint64_t z) const {
  return std::norm(amplitudes_.at(z));
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    p[i] = std::norm(amplitudes_[i]);
  }
  return p;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<std::uint64_t> StateVector::indices_by_probability() const {
  std::vector<std::uint64_t> idx(amplitudes_.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(), [this](std::uint64_t a,
                                                  std::uint64_t b) {
    const double pa = std::norm(amplitudes_[a]);
    const double pb = std::norm(amplitudes_[b]);
    if (pa != pb) return pa > pb;
    return a < b;
  });
  return idx;
}

void StateVector::check_normalized() const {
  const double defect = std::abs(norm() - 1.0);
  require(defect <= kNormTolerance, ErrorCode::NumericError,
          "statevector norm deviates from 1 by " + format_double(defect));
}

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::Exponential:
      return "exponential";
    case ModelKind::Algebraic:
      return "algebraic";
    case ModelKind::Step:
      return "step";
  }
  return "?";
}

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "exponential") return ModelKind::Exponential;
  if (name == "algebraic") return ModelKind::Algebraic;
  if (name == "step") return ModelKind::Step;
  detail::fail(ErrorCode::InvalidArgument,
               "unknown model distribution: " + name);
}

StateVector load_state(std::istream& in, int num_qubits) {
  require(num_qubits >= 1 && num_qubits <= 30, ErrorCode::InvalidArgument,
          "qubit count must be in [1, 30]");
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> amps(dim, Complex{0, 0});
  std::string line;
  std::size_t line_no = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::uint64_t index = 0;
    double re = 0.0, im = 0.0;
    if (!(ls >> index)) continue;
    require(static_cast<bool>(ls >> re), ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": missing amplitude");
    ls >> im;  // optional imaginary part
    require(index < dim, ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": index out of range");
    amps[index] = Complex{re, im};
    any = true;
  }
  require(any, ErrorCode::ParseError, "empty state input");
  double norm_sq = 0.0;
  for (const auto& a : amps) norm_sq += std::norm(a);
  const double norm = std::sqrt(norm_sq);
  require(std::abs(norm - 1.0) <= kLoadNormTolerance, ErrorCode::NumericError,
          "state norm deviates from 1 by " + format_double(std::abs(norm - 1.0)) +
              " (tolerance 1e-06)");
  for (auto& a : amps) a /= norm;
  return StateVector(num_qubits, std::move(amps));
}

StateVector load_state(const std::string& text, int num_qubits) {
  std::istringstream in(text);
  return load_state(in, num_qubits);
}

StateVector read_state_file(const std::string& path, int num_qubits) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open state file: " + path);
  return load_state(in, num_qubits);
}

std::string state_to_text(const StateVector& state) {
  std::string out;
  const auto& amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (amps[i] == Complex{0, 0}) continue;
    out += std::to_string(i);
    out += ' ';
    out += format_double(amps[i].real());
    if (amps[i].imag() != 0.0) {
      out += ' ';
      out += format_double(amps[i].imag());
    }
    out += '\n';
  }
  return out;
}

StateVector model_state(ModelKind kind, double parameter, int num_qubits) {
  require(num_qubits >= 1 && num_qubits <= 30, ErrorCode::InvalidArgument,
          "qubit count must be in [1, 30]");
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> amps(dim, Complex{0, 0});
  switch (kind) {
    case ModelKind::Exponential: {
      require(parameter > 0.0, ErrorCode::InvalidArgument,
              "exponential decay rate must be positive");
      double norm_sq = 0.0;
      for (std::size_t l = 0; l < dim; ++l) {
        const double a = std::exp(-parameter * static_cast<double>(l) / 2.0);
        amps[l] = Complex{a, 0};
        norm_sq += a * a;
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& a : amps) a *= inv;
      break;
    }
    case ModelKind::Algebraic: {
      require(parameter > 1.0, ErrorCode::InvalidArgument,
              "algebraic decay exponent must exceed 1");
      double norm_sq = 0.0;
      for (std::size_t l = 0; l < dim; ++l) {
        const double a =
            std::pow(static_cast<double>(l + 1), -parameter / 2.0);
        amps[l] = Complex{a, 0};
        norm_sq += a * a;
      }
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (auto& a : amps) a *= inv;
      break;
    }
    case ModelKind::Step: {
      const double m_real = parameter;
      require(m_real >= 1.0 && m_real <= static_cast<double>(dim) &&
                  m_real == std::floor(m_real),
              ErrorCode::InvalidArgument,
              "step width must be an integer in [1, 2^n]");
      const std::size_t m = static_cast<std::size_t>(m_real);
      const double a = 1.0 / std::sqrt(static_cast<double>(m));
      for (std::size_t l = 0; l < m; ++l) amps[l] = Complex{a, 0};
      break;
    }
  }
  return StateVector(num_qubits, std::move(amps));
}

std::string SampleResult::to_csv(int num_qubits) const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rows(counts.begin(),
                                                            counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string out = "bitstring,count\n";
  for (const auto& [value, count] : rows) {
    out += Bitstring(value, num_qubits).to_string();
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

std::uint64_t SampleResult::most_probable() const {
  require(!counts.empty(), ErrorCode::InvalidArgument, "empty sample");
  std::uint64_t best = 0;
  std::uint64_t best_count = 0;
  for (const auto& [value, count] : counts) {  // map order breaks ties low
    if (count > best_count) {
      best = value;
      best_count = count;
    }
  }
  return best;
}

SampleResult sample(const StateVector& state, std::uint64_t shots, Rng& rng) {
  require(shots >= 1, ErrorCode::InvalidArgument, "shots must be >= 1");
  DiscreteSampler sampler(state.probabilities());
  SampleResult result;
  result.shots = shots;
  result.seed = rng.seed();
  result.rng_name = Rng::algorithm_name();
  for (std::uint64_t i = 0; i < shots; ++i) {
    ++result.counts[sampler.draw(rng)];
  }
  return result;
}

SampleResult sample(const StateVector& state, std::uint64_t shots,
                    std::uint64_t seed) {
  Rng rng(seed);
  return sample(state, shots, rng);
}

namespace detail {

void pauli_exponential_inplace(std::vector<Complex>& amps,
                               const PauliString& string, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex is{0, s};
  const std::uint64_t x = string.x_mask();
  if (x == 0) {
    // Diagonal string: per-basis phase e^{i angle * (+-1)}.
    const Complex plus{c, s};
    const Complex minus{c, -s};
    for (std::size_t z = 0; z < amps.size(); ++z) {
      const bool negative = string.phase_on(z).real() < 0.0;
      amps[z] *= negative ? minus : plus;
    }
    return;
  }
  for (std::size_t z = 0; z < amps.size(); ++z) {
    const std::size_t partner = z ^ x;
    if (partner < z) continue;
    const Complex phase_z = string.phase_on(z);
    const Complex phase_p = string.phase_on(partner);
    const Complex az = amps[z];
    const Complex ap = amps[partner];
    amps[z] = c * az + is * phase_p * ap;
    amps[partner] = c * ap + is * phase_z * az;
  }
}

}  // namespace detail

StateVector apply_pauli_exponential(const StateVector& state,
                                    const PauliTerm& term, double angle_scale) {
  require(term.string.num_qubits() == state.num_qubits(),
          ErrorCode::DimensionMismatch,
          "pauli string qubit count does not match state");
  std::vector<Complex> amps = state.amplitudes();
  detail::pauli_exponential_inplace(amps, term.string,
                                    angle_scale * term.coefficient);
  return StateVector(state.num_qubits(), std::move(amps));
}

double expectation(const StateVector& state, const PauliHamiltonian& h) {
  require(h.num_qubits() == state.num_qubits(), ErrorCode::DimensionMismatch,
          "hamiltonian qubit count does not match state");
  const auto& amps = state.amplitudes();
  Complex acc{0, 0};
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.string.x_mask();
    Complex t{0, 0};
    for (std::size_t z = 0; z < amps.size(); ++z) {
      // <Psi| c P |Psi> term: P|z> lands on |z^x> with phase_on(z).
      t += std::conj(amps[z ^ x]) * term.string.phase_on(z) * amps[z];
    }
    acc += term.coefficient * t;
  }
  require(std::abs(acc.imag()) <= 1e-10, ErrorCode::NumericError,
          "expectation value has imaginary residue " +
              format_double(acc.imag()));
  return acc.real();
}

}  // namespace sqdaa
