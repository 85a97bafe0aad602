// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "sqdaa/pauli.hpp"
#include "sqdaa/statevector.hpp"

namespace testutil {

using sqdaa::Complex;

inline std::string fixture_path(const std::string& name) {
  return std::string(SQDAA_FIXTURE_DIR) + "/" + name;
}

/// Deterministic random Pauli Hamiltonian with distinct words.
inline sqdaa::PauliHamiltonian random_hamiltonian(int num_qubits,
                                                  std::size_t terms,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<int> op(0, 3);
  std::vector<sqdaa::PauliTerm> out;
  while (out.size() < terms) {
    std::string word;
    for (int q = 0; q < num_qubits; ++q) {
      word += "IXYZ"[op(rng)];
    }
    if (word == std::string(static_cast<std::size_t>(num_qubits), 'I')) {
      continue;
    }
    bool duplicate = false;
    const auto candidate = sqdaa::PauliString::from_word(word);
    for (const auto& t : out) {
      if (t.string == candidate) duplicate = true;
    }
    if (duplicate) continue;
    out.push_back({coeff(rng), candidate});
  }
  return sqdaa::PauliHamiltonian(num_qubits, std::move(out));
}

inline sqdaa::StateVector random_state(int num_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> amps(dim);
  double norm_sq = 0.0;
  for (auto& a : amps) {
    a = Complex{normal(rng), normal(rng)};
    norm_sq += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a *= inv;
  return sqdaa::StateVector(num_qubits, std::move(amps));
}

/// y = M x for the row-major dense matrix type.
inline std::vector<Complex> matvec(const sqdaa::DenseMatrix& m,
                                   const std::vector<Complex>& x) {
  std::vector<Complex> y(m.dim, Complex{0, 0});
  for (std::size_t i = 0; i < m.dim; ++i) {
    for (std::size_t j = 0; j < m.dim; ++j) {
      y[i] += m.at(i, j) * x[j];
    }
  }
  return y;
}

/// Full spectrum of a complex Hermitian matrix by cyclic Jacobi rotations.
/// Deliberately independent of the library's eigensolver path.
inline std::vector<double> jacobi_eigenvalues(sqdaa::DenseMatrix a) {
  const std::size_t n = a.dim;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off += std::norm(a.at(p, q));
      }
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double phase = std::arg(apq);
        const double tau = (aqq - app) / (2.0 * std::abs(apq));
        const double t = (tau >= 0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const Complex s = t * c * std::exp(Complex{0, phase});
        // Columns p and q of the rotation; apply A <- J^H A J.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a.at(k, p);
          const Complex akq = a.at(k, q);
          a.at(k, p) = c * akp - std::conj(s) * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a.at(p, k);
          const Complex aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = std::conj(s) * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> eigenvalues(n);
  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a.at(i, i).real();
  std::sort(eigenvalues.begin(), eigenvalues.end());
  return eigenvalues;
}

}  // namespace testutil
