// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sqdaa/error.hpp"

namespace sqdaa {

using Complex = std::complex<double>;

/// An n-bit computational basis state. Bit 0 of `value` is qubit 0, which is
/// the rightmost character of a Pauli word.
struct Bitstring {
  std::uint64_t value = 0;
  int num_qubits = 0;

  Bitstring() = default;
  Bitstring(std::uint64_t v, int n) : value(v), num_qubits(n) {
    require(n >= 1 && n <= 63, ErrorCode::InvalidArgument,
            "bitstring qubit count out of range");
    require(n == 63 || v < (std::uint64_t{1} << n), ErrorCode::InvalidArgument,
            "bitstring value out of range for qubit count");
  }

  std::string to_string() const;  // n characters, qubit 0 rightmost

  friend bool operator==(const Bitstring& a, const Bitstring& b) {
    return a.value == b.value && a.num_qubits == b.num_qubits;
  }
  friend bool operator<(const Bitstring& a, const Bitstring& b) {
    return a.value < b.value;
  }
};

/// Tensor product of single-qubit Pauli operators, stored as an X/Z mask
/// pair (Y sets both masks).
class PauliString {
 public:
  PauliString() = default;

  /// Parses a word over {I,X,Y,Z}. The rightmost character acts on qubit 0.
  static PauliString from_word(std::string_view word);

  static PauliString from_masks(int num_qubits, std::uint64_t x_mask,
                                std::uint64_t z_mask);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }

  /// 'I', 'X', 'Y' or 'Z' acting on the given qubit.
  char op_at(int qubit) const;

  std::string word() const;

  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

  /// True when the string contains no X or Y factor (diagonal in the
  /// computational basis).
  bool is_diagonal() const { return x_mask_ == 0; }

  int weight() const;   // non-identity factor count
  int y_count() const;  // number of Y factors

  /// P|z> = phase * |z XOR x_mask()|, phase in {+-1, +-i}.
  Complex phase_on(std::uint64_t z) const;

  /// Word comparison with I < X < Y < Z, most significant qubit first.
  friend bool operator<(const PauliString& a, const PauliString& b);
  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.num_qubits_ == b.num_qubits_ && a.x_mask_ == b.x_mask_ &&
           a.z_mask_ == b.z_mask_;
  }

 private:
  int num_qubits_ = 0;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
};

struct PauliTerm {
  double coefficient = 0.0;
  PauliString string;
};

/// Small dense complex matrix (row-major), used for brute-force oracles and
/// projected subspace Hamiltonians.
struct DenseMatrix {
  std::size_t dim = 0;
  std::vector<Complex> data;

  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t d) : dim(d), data(d * d, Complex{0, 0}) {}

  Complex& at(std::size_t i, std::size_t j) { return data[i * dim + j]; }
  const Complex& at(std::size_t i, std::size_t j) const {
    return data[i * dim + j];
  }

  double hermiticity_defect() const;
};

/// Weighted sum of Pauli strings with real coefficients. Terms are merged on
/// construction and kept in lexicographic word order (I < X < Y < Z, leftmost
/// character = qubit n-1); that order is shared by the reduced-term count and
/// by Trotter products.
class PauliHamiltonian {
 public:
  PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Sum of absolute coefficients (the LCU one-norm).
  double coefficient_norm() const;

  std::string to_text() const;  // round-trips through parse_hamiltonian

 private:
  int num_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

/// Parses the line-oriented "<coefficient> <pauli word>" format; '#' starts a
/// comment. Duplicate words are merged by coefficient addition.
PauliHamiltonian parse_hamiltonian(std::istream& in);
PauliHamiltonian parse_hamiltonian(const std::string& text);
PauliHamiltonian read_hamiltonian_file(const std::string& path);

/// <z|H|z'> via parity rules: a term contributes iff its X mask equals
/// z XOR z', with the phase of the Z/Y factors acting on z'.
Complex matrix_element(const PauliHamiltonian& h, const Bitstring& z,
                       const Bitstring& z_prime);

/// Brute-force 2^n x 2^n Kronecker expansion. Guarded to n <= 14.
DenseMatrix dense_matrix(const PauliHamiltonian& h);

/// Number of Pauli strings after counting consecutive same-basis strings
/// once. Two consecutive strings share a basis iff they agree on every qubit
/// where both are non-identity.
std::size_t reduced_term_count(const PauliHamiltonian& h);

bool strings_share_basis(const PauliString& a, const PauliString& b);

}  // namespace sqdaa
