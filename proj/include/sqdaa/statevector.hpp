// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "sqdaa/pauli.hpp"
#include "sqdaa/rng.hpp"

namespace sqdaa {

/// Exact complex statevector over the 2^n computational basis states.
/// Normalization is checked on construction and after every operator
/// application (tolerance 1e-10 on the norm).
class StateVector {
 public:
  StateVector(int num_qubits, std::vector<Complex> amplitudes);

  static StateVector computational_basis(int num_qubits, std::uint64_t value);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  Complex amplitude(std::uint64_t z) const { return amplitudes_.at(z); }
  double probability(std::uint64_t z) const;
  std::vector<double> probabilities() const;

  double norm() const;

  /// Basis-state indices ordered by decreasing probability, ties broken by
  /// lower index.
  std::vector<std::uint64_t> indices_by_probability() const;

  std::vector<Complex>& mutable_amplitudes() { return amplitudes_; }
  void check_normalized() const;

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

enum class ModelKind { Exponential, Algebraic, Step };

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

/// Reads "index real [imag]" amplitude lines; unlisted amplitudes are zero.
/// Inputs whose norm deviates from 1 by more than 1e-6 are rejected,
/// otherwise the state is renormalized.
StateVector load_state(std::istream& in, int num_qubits);
StateVector load_state(const std::string& text, int num_qubits);
StateVector read_state_file(const std::string& path, int num_qubits);

std::string state_to_text(const StateVector& state);

/// Model distributions: amplitudes e^{-alpha l/2}, (l+1)^{-gamma/2}, or a
/// uniform block over the first m basis states, each exactly normalized.
/// `parameter` is alpha (> 0), gamma (> 1), or m (in [1, 2^n]).
StateVector model_state(ModelKind kind, double parameter, int num_qubits);

struct SampleResult {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::string rng_name;

  std::string to_csv(int num_qubits) const;  // "bitstring,count" lines

  /// Counted value with the highest occurrence, ties broken by lowest value.
  std::uint64_t most_probable() const;
};

/// Seeded multinomial draw from |amplitudes|^2.
SampleResult sample(const StateVector& state, std::uint64_t shots,
                    std::uint64_t seed);
SampleResult sample(const StateVector& state, std::uint64_t shots, Rng& rng);

/// exp(i * angle_scale * coefficient * P) applied exactly.
StateVector apply_pauli_exponential(const StateVector& state,
                                    const PauliTerm& term, double angle_scale);

namespace detail {
void pauli_exponential_inplace(std::vector<Complex>& amps,
                               const PauliString& string, double angle);
}

/// <Psi|H|Psi>; fails if the imaginary residue exceeds 1e-10.
double expectation(const StateVector& state, const PauliHamiltonian& h);

}  // namespace sqdaa
