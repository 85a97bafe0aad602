// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include "sqdaa/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

namespace sqdaa {

namespace {

constexpr Complex kPhaseTable[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

std::string format_coefficient(double c) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", c);
  return buf;
}

}  // namespace

std::string Bitstring::to_string() const {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((value >> q) & 1u) s[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
  }
  return s;
}

PauliString PauliString::from_word(std::string_view word) {
  require(!word.empty() && word.size() <= 63, ErrorCode::InvalidArgument,
          "pauli word length must be in [1, 63]");
  PauliString p;
  p.num_qubits_ = static_cast<int>(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int qubit = static_cast<int>(word.size() - 1 - i);
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    switch (word[i]) {
      case 'I':
        break;
      case 'X':
        p.x_mask_ |= bit;
        break;
      case 'Y':
        p.x_mask_ |= bit;
        p.z_mask_ |= bit;
        break;
      case 'Z':
        p.z_mask_ |= bit;
        break;
      default:
        detail::fail(ErrorCode::ParseError,
                     std::string("invalid pauli character '") + word[i] + "'");
    }
  }
  return p;
}

PauliString PauliString::from_masks(int num_qubits, std::uint64_t x_mask,
                                    std::uint64_t z_mask) {
  require(num_qubits >= 1 && num_qubits <= 63, ErrorCode::InvalidArgument,
          "qubit count must be in [1, 63]");
  const std::uint64_t valid =
      num_qubits == 63 ? ~std::uint64_t{0} >> 1
                       : (std::uint64_t{1} << num_qubits) - 1;
  require((x_mask | z_mask) == ((x_mask | z_mask) & valid),
          ErrorCode::InvalidArgument, "mask bits outside qubit range");
  PauliString p;
  p.num_qubits_ = num_qubits;
  p.x_mask_ = x_mask;
  p.z_mask_ = z_mask;
  return p;
}

char PauliString::op_at(int qubit) const {
  const bool x = (x_mask_ >> qubit) & 1u;
  const bool z = (z_mask_ >> qubit) & 1u;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::word() const {
  std::string s(static_cast<std::size_t>(num_qubits_), 'I');
  for (int q = 0; q < num_qubits_; ++q) {
    s[static_cast<std::size_t>(num_qubits_ - 1 - q)] = op_at(q);
  }
  return s;
}

int PauliString::weight() const {
  return std::popcount(x_mask_ | z_mask_);
}

int PauliString::y_count() const {
  return std::popcount(x_mask_ & z_mask_);
}

Complex PauliString::phase_on(std::uint64_t z) const {
  // i^{#Y} * (-1)^{popcount(z & z_mask)}
  int quarter = y_count() & 3;
  if (std::popcount(z & z_mask_) & 1) quarter = (quarter + 2) & 3;
  return kPhaseTable[quarter];
}

bool operator<(const PauliString& a, const PauliString& b) {
  if (a.num_qubits_ != b.num_qubits_) return a.num_qubits_ < b.num_qubits_;
  for (int q = a.num_qubits_ - 1; q >= 0; --q) {
    const char ca = a.op_at(q);
    const char cb = b.op_at(q);
    if (ca != cb) return ca < cb;  // ASCII: I < X < Y < Z
  }
  return false;
}

double DenseMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    }
  }
  return worst;
}

PauliHamiltonian::PauliHamiltonian(int num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
  require(num_qubits >= 1 && num_qubits <= 63, ErrorCode::InvalidArgument,
          "qubit count must be in [1, 63]");
  require(!terms.empty(), ErrorCode::InvalidArgument,
          "hamiltonian needs at least one term");
  std::map<std::pair<std::uint64_t, std::uint64_t>, double> merged;
  for (const auto& t : terms) {
    require(t.string.num_qubits() == num_qubits, ErrorCode::DimensionMismatch,
            "term qubit count does not match hamiltonian");
    require(std::isfinite(t.coefficient), ErrorCode::InvalidArgument,
            "coefficient must be finite");
    merged[{t.string.x_mask(), t.string.z_mask()}] += t.coefficient;
  }
  terms_.reserve(merged.size());
  for (const auto& [masks, c] : merged) {
    terms_.push_back(
        {c, PauliString::from_masks(num_qubits, masks.first, masks.second)});
  }
  std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) {
    if (!(a.string == b.string)) return a.string < b.string;
    if (std::signbit(a.coefficient) != std::signbit(b.coefficient))
      return std::signbit(b.coefficient);
    return std::abs(a.coefficient) < std::abs(b.coefficient);
  });
}

double PauliHamiltonian::coefficient_norm() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coefficient);
  return s;
}

std::string PauliHamiltonian::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += format_coefficient(t.coefficient);
    out += ' ';
    out += t.string.word();
    out += '\n';
  }
  return out;
}

PauliHamiltonian parse_hamiltonian(std::istream& in) {
  std::vector<PauliTerm> terms;
  int num_qubits = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string coeff_token, word;
    if (!(ls >> coeff_token)) continue;  // blank line
    require(static_cast<bool>(ls >> word), ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": missing pauli word");
    std::string trailing;
    require(!(ls >> trailing), ErrorCode::ParseError,
            "line " + std::to_string(line_no) + ": trailing content");
    std::size_t used = 0;
    double coeff = 0.0;
    try {
      coeff = std::stod(coeff_token, &used);
    } catch (const std::exception&) {
      detail::fail(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                              ": malformed coefficient '" +
                                              coeff_token + "'");
    }
    require(used == coeff_token.size() && std::isfinite(coeff),
            ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                       ": malformed coefficient '" +
                                       coeff_token + "'");
    if (num_qubits == 0) {
      num_qubits = static_cast<int>(word.size());
    }
    require(static_cast<int>(word.size()) == num_qubits, ErrorCode::ParseError,
            "line " + std::to_string(line_no) +
                ": inconsistent pauli word length");
    terms.push_back({coeff, PauliString::from_word(word)});
  }
  require(!terms.empty(), ErrorCode::ParseError,
          "empty hamiltonian input (no terms)");
  return PauliHamiltonian(num_qubits, std::move(terms));
}

PauliHamiltonian parse_hamiltonian(const std::string& text) {
  std::istringstream in(text);
  return parse_hamiltonian(in);
}

PauliHamiltonian read_hamiltonian_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError,
          "cannot open hamiltonian file: " + path);
  return parse_hamiltonian(in);
}

Complex matrix_element(const PauliHamiltonian& h, const Bitstring& z,
                       const Bitstring& z_prime) {
  require(z.num_qubits == h.num_qubits() && z_prime.num_qubits == h.num_qubits(),
          ErrorCode::DimensionMismatch,
          "bitstring qubit count does not match hamiltonian");
  const std::uint64_t flip = z.value ^ z_prime.value;
  Complex acc{0, 0};
  for (const auto& t : h.terms()) {
    if (t.string.x_mask() != flip) continue;
    acc += t.coefficient * t.string.phase_on(z_prime.value);
  }
  return acc;
}

DenseMatrix dense_matrix(const PauliHamiltonian& h) {
  require(h.num_qubits() <= 14, ErrorCode::InvalidArgument,
          "dense matrix limited to n <= 14 qubits");
  const std::size_t dim = std::size_t{1} << h.num_qubits();
  DenseMatrix m(dim);
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.string.x_mask();
    for (std::uint64_t col = 0; col < dim; ++col) {
      m.at(col ^ x, col) += t.coefficient * t.string.phase_on(col);
    }
  }
  return m;
}

bool strings_share_basis(const PauliString& a, const PauliString& b) {
  const std::uint64_t support_a = a.x_mask() | a.z_mask();
  const std::uint64_t support_b = b.x_mask() | b.z_mask();
  const std::uint64_t both = support_a & support_b;
  return ((a.x_mask() ^ b.x_mask()) & both) == 0 &&
         ((a.z_mask() ^ b.z_mask()) & both) == 0;
}

std::size_t reduced_term_count(const PauliHamiltonian& h) {
  const auto& terms = h.terms();
  std::size_t count = 1;
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!strings_share_basis(terms[i - 1].string, terms[i].string)) ++count;
  }
  return count;
}

}  // namespace sqdaa
