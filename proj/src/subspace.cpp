// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/subspace.hpp"

#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace sqdaa {

namespace {

constexpr double kHermiticityTolerance = 1e-10;

}  // namespace

void Subspace::validate(int num_qubits) const {
  require(!basis.empty(), ErrorCode::InvalidArgument,
          "subspace needs at least one basis state");
  std::set<std::uint64_t> seen;
  for (const auto& z : basis) {
    require(z.num_qubits == num_qubits, ErrorCode::DimensionMismatch,
            "subspace basis state qubit count mismatch");
    require(seen.insert(z.value).second, ErrorCode::InvalidArgument,
            "subspace basis states must be distinct");
  }
}

std::string SubspaceSolution::to_json() const {
  nlohmann::json j;
  j["energy"] = energy;
  j["dim"] = subspace.dim();
  j["basis"] = nlohmann::json::array();
  for (const auto& z : subspace.basis) j["basis"].push_back(z.to_string());
  return j.dump(2);
}

DenseMatrix project_hamiltonian(const PauliHamiltonian& h, const Subspace& s) {
  s.validate(h.num_qubits());
  const std::size_t dim = s.dim();
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const Complex e = matrix_element(h, s.basis[i], s.basis[j]);
      m.at(i, j) = e;
      m.at(j, i) = std::conj(e);
    }
  }
  return m;
}

SubspaceSolution solve_subspace(const DenseMatrix& matrix) {
  require(matrix.dim >= 1, ErrorCode::InvalidArgument, "empty matrix");
  require(matrix.hermiticity_defect() <= kHermiticityTolerance,
          ErrorCode::NumericError, "matrix is not Hermitian within 1e-10");
  SubspaceSolution sol;
  if (matrix.dim == 1) {
    sol.energy = matrix.at(0, 0).real();
    sol.groundvector = {Complex{1, 0}};
    return sol;
  }
  const auto n = static_cast<Eigen::Index>(matrix.dim);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = matrix.at(static_cast<std::size_t>(i),
                          static_cast<std::size_t>(j));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  require(solver.info() == Eigen::Success, ErrorCode::NumericError,
          "eigensolver failed to converge");
  sol.energy = solver.eigenvalues()(0);
  sol.groundvector.resize(matrix.dim);
  const auto v = solver.eigenvectors().col(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    sol.groundvector[static_cast<std::size_t>(i)] = v(i);
  }
  return sol;
}

SubspaceSolution solve_in_subspace(const PauliHamiltonian& h,
                                   const Subspace& s) {
  SubspaceSolution sol = solve_subspace(project_hamiltonian(h, s));
  sol.subspace = s;
  return sol;
}

double energy_delta(const SubspaceSolution& prev, const SubspaceSolution& cur) {
  return std::abs(prev.energy - cur.energy);
}

}  // namespace sqdaa
