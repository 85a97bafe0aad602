// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "sqdaa/pauli.hpp"

namespace sqdaa {

/// Ordered, distinct basis of sampled bitstrings spanning the diagonalization
/// subspace. Order is discovery order; the ground-state energy is invariant
/// under permutations of the basis.
struct Subspace {
  std::vector<Bitstring> basis;

  std::size_t dim() const { return basis.size(); }
  void validate(int num_qubits) const;
};

struct SubspaceSolution {
  double energy = 0.0;
  std::vector<Complex> groundvector;
  Subspace subspace;

  std::string to_json() const;
};

/// Entry (i, j) = <z_i|H|z_j>; Hermitian by construction.
DenseMatrix project_hamiltonian(const PauliHamiltonian& h, const Subspace& s);

/// Minimal eigenvalue and unit eigenvector of a Hermitian matrix
/// (dense solve; intended for desk-scale dims up to ~2048).
SubspaceSolution solve_subspace(const DenseMatrix& matrix);

/// project + solve, carrying the subspace in the solution.
SubspaceSolution solve_in_subspace(const PauliHamiltonian& h,
                                   const Subspace& s);

/// |E_prev - E_cur|.
double energy_delta(const SubspaceSolution& prev, const SubspaceSolution& cur);

}  // namespace sqdaa
