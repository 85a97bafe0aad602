// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "sqdaa/amplitude.hpp"
#include "testutil.hpp"

using namespace sqdaa;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<Bitstring> bits(int n, std::initializer_list<std::uint64_t> vs) {
  std::vector<Bitstring> out;
  for (auto v : vs) out.emplace_back(v, n);
  return out;
}

double off_set_weight(const StateVector& s,
                      const std::vector<Bitstring>& members) {
  double inside = 0.0;
  for (const auto& m : members) inside += s.probability(m.value);
  return 1.0 - inside;
}

}  // namespace

TEST_CASE("theta_from_r") {
  CHECK(theta_from_r(0.0) == doctest::Approx(kPi / 2.0));
  CHECK(theta_from_r(0.5) == doctest::Approx(kPi / 4.0));
  CHECK(theta_from_r(0.75) == doctest::Approx(kPi / 6.0));
  CHECK_THROWS_AS(theta_from_r(1.0), Error);
  CHECK_THROWS_AS(theta_from_r(-0.1), Error);
}

TEST_CASE("ideal_steps at full target fidelity") {
  CHECK(ideal_steps(kPi / 4.0, 1.0) == 1);
  CHECK(ideal_steps(kPi / 6.0, 1.0) == 1);
  CHECK(ideal_steps(kPi / 3.0, 1.0) == 0);
}

TEST_CASE("ideal_steps monotonicity") {
  // Non-increasing in theta, non-decreasing in the target fidelity.
  std::uint64_t prev = ideal_steps(0.01, 1.0);
  for (double theta = 0.02; theta < kPi / 2.0; theta += 0.01) {
    const std::uint64_t s = ideal_steps(theta, 1.0);
    CHECK(s <= prev);
    prev = s;
  }
  std::uint64_t prev_f = ideal_steps(0.01, 0.05);
  for (double f = 0.1; f <= 1.0; f += 0.05) {
    const std::uint64_t s = ideal_steps(0.01, f);
    CHECK(s >= prev_f);
    prev_f = s;
  }
}

TEST_CASE("uniform 4-state rotation is exact after one step") {
  const StateVector uniform = model_state(ModelKind::Step, 4, 2);
  const ReductionSet set =
      ReductionSet::from_state(uniform, bits(2, {1, 2, 3}));
  CHECK(set.reduced_probability == doctest::Approx(0.75));
  const StateVector out = apply_standard_aa(uniform, set, 1);
  CHECK(out.probability(0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero steps is the identity") {
  const StateVector s = testutil::random_state(4, 8);
  const ReductionSet set = ReductionSet::from_state(s, bits(4, {3, 9}));
  const StateVector out = apply_standard_aa(s, set, 0);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    CHECK(std::abs(out.amplitudes()[i] - s.amplitudes()[i]) == 0.0);
  }
}

TEST_CASE("rotation law: off-set weight equals sin^2((2s+1) theta)") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const StateVector s = testutil::random_state(n, rng());
    const std::uint64_t dim = std::uint64_t{1} << n;
    std::vector<Bitstring> members;
    const std::size_t count = 1 + rng() % std::min<std::uint64_t>(dim - 1, 6);
    while (members.size() < count) {
      const std::uint64_t v = rng() % dim;
      bool seen = false;
      for (const auto& m : members) seen |= (m.value == v);
      if (!seen) members.emplace_back(v, n);
    }
    const ReductionSet set = ReductionSet::from_state(s, members);
    const double theta = theta_from_r(set.reduced_probability);
    for (std::uint64_t steps : {0ull, 1ull, 2ull, 5ull, 20ull}) {
      const StateVector out = apply_standard_aa(s, set, steps);
      CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
      const double predicted =
          std::pow(std::sin((2.0 * static_cast<double>(steps) + 1.0) * theta), 2);
      CHECK(off_set_weight(out, members) ==
            doctest::Approx(predicted).epsilon(0).scale(1).epsilon(1e-10));
    }
  }
}

TEST_CASE("exponential top-string reduction hits the closed form") {
  const StateVector s = model_state(ModelKind::Exponential, 1.0, 10);
  const ReductionSet set = ReductionSet::from_state(s, bits(10, {0}));
  const double theta = theta_from_r(set.reduced_probability);
  const std::uint64_t steps = ideal_steps(theta, 1.0);
  const StateVector out = apply_standard_aa(s, set, steps);
  const double predicted =
      std::pow(std::sin((2.0 * static_cast<double>(steps) + 1.0) * theta), 2);
  CHECK(off_set_weight(out, set.members) ==
        doctest::Approx(predicted).epsilon(1e-12));
}

TEST_CASE("amplified states stay in the two-dimensional rotation plane") {
  // Relative amplitude ratios inside the set and inside its complement are
  // unchanged by the rotation.
  const StateVector s = testutil::random_state(6, 77);
  const ReductionSet set = ReductionSet::from_state(s, bits(6, {0, 7, 33}));
  const StateVector out = apply_standard_aa(s, set, 3);
  const double inside_scale =
      std::abs(out.amplitudes()[0]) / std::abs(s.amplitudes()[0]);
  for (const auto& m : set.members) {
    CHECK(std::abs(out.amplitudes()[m.value] -
                   (out.amplitudes()[0] / s.amplitudes()[0]) *
                       s.amplitudes()[m.value]) < 1e-10);
  }
  (void)inside_scale;
  const double outside_scale =
      std::abs(out.amplitudes()[1]) / std::abs(s.amplitudes()[1]);
  for (std::uint64_t v = 0; v < s.dimension(); ++v) {
    if (v == 0 || v == 7 || v == 33) continue;
    CHECK(std::abs(std::abs(out.amplitudes()[v]) -
                   outside_scale * std::abs(s.amplitudes()[v])) < 1e-10);
  }
}

TEST_CASE("full-coverage reduction sets are rejected") {
  const StateVector uniform = model_state(ModelKind::Step, 4, 2);
  CHECK_THROWS_AS(ReductionSet::from_state(uniform, bits(2, {0, 1, 2, 3})),
                  Error);
  // A set covering all nonzero amplitudes is rejected even when R estimates
  // disagree.
  const StateVector two = model_state(ModelKind::Step, 2, 2);
  const ReductionSet fake = ReductionSet::from_estimate(bits(2, {0, 1}), 0.5);
  CHECK_THROWS_AS(apply_standard_aa(two, fake, 1), Error);
}

TEST_CASE("fixed point angles: delta = 1 recovers plain reflections") {
  for (std::uint64_t s : {1ull, 2ull, 5ull}) {
    const FixedPointAngles angles = fixed_point_angles(s, 1.0);
    for (double a : angles.alphas) CHECK(a == doctest::Approx(kPi));
    for (double b : angles.betas) CHECK(b == doctest::Approx(kPi));
  }
}

TEST_CASE("fixed point angles: mirror symmetry") {
  const FixedPointAngles angles = fixed_point_angles(2, 0.5);
  CHECK(angles.alphas[0] == doctest::Approx(angles.betas[1]));
  CHECK(angles.alphas[1] == doctest::Approx(angles.betas[0]));
}

TEST_CASE("fixed point evolution matches the Chebyshev closed form") {
  const StateVector s = model_state(ModelKind::Exponential, 1.0, 8);
  for (double delta : {0.1, 0.3, 0.5}) {
    for (const auto& members :
         {bits(8, {0}), bits(8, {0, 1}), bits(8, {0, 1, 2})}) {
      const ReductionSet set = ReductionSet::from_state(s, members);
      const double f0 = 1.0 - set.reduced_probability;
      const std::uint64_t s_min = fixed_point_min_steps(delta, std::sqrt(f0));
      for (std::uint64_t steps :
           {std::max<std::uint64_t>(1, s_min - 1), s_min, s_min + 2}) {
        const StateVector out = apply_fixed_point_aa(s, set, steps, delta);
        CHECK(std::abs(out.norm() - 1.0) <= 1e-10);
        // Fidelity with the normalized off-set part of the prepared state.
        Complex overlap{0, 0};
        double tail_norm = 0.0;
        for (std::uint64_t v = 0; v < s.dimension(); ++v) {
          bool inside = false;
          for (const auto& m : members) inside |= (m.value == v);
          if (inside) continue;
          overlap += std::conj(s.amplitudes()[v]) * out.amplitudes()[v];
          tail_norm += std::norm(s.amplitudes()[v]);
        }
        const double fidelity = std::norm(overlap) / tail_norm;
        const double predicted = fixed_point_overlap_bound(steps, delta, f0);
        CHECK(fidelity == doctest::Approx(predicted).epsilon(1e-10));
        if (steps >= s_min) {
          CHECK(fidelity >= 1.0 - delta * delta - 1e-10);
        }
      }
    }
  }
}

TEST_CASE("fixed point with delta = 1 reproduces standard amplification") {
  const StateVector s = model_state(ModelKind::Exponential, 0.8, 6);
  const ReductionSet set = ReductionSet::from_state(s, bits(6, {0, 1}));
  for (std::uint64_t steps : {1ull, 2ull, 4ull}) {
    const StateVector fp = apply_fixed_point_aa(s, set, steps, 1.0);
    const StateVector std_aa = apply_standard_aa(s, set, steps);
    for (std::uint64_t v = 0; v < s.dimension(); ++v) {
      CHECK(std::abs(fp.probability(v) - std_aa.probability(v)) < 1e-12);
    }
  }
}

TEST_CASE("fixed point zero steps is the identity") {
  const StateVector s = model_state(ModelKind::Exponential, 1.0, 4);
  const ReductionSet set = ReductionSet::from_state(s, bits(4, {0}));
  const StateVector out = apply_fixed_point_aa(s, set, 0, 0.5);
  for (std::uint64_t v = 0; v < s.dimension(); ++v) {
    CHECK(out.probability(v) == doctest::Approx(s.probability(v)));
  }
}

TEST_CASE("aa circuit t-cost formula") {
  const CircuitTCost bare = aa_circuit_tcost(10, 3, 0, 1000, 500);
  CHECK(bare.t_count == 1000);
  CHECK(bare.t_depth == 500);
  const CircuitTCost c = aa_circuit_tcost(10, 3, 2, 1000, 1000);
  CHECK(c.t_count == 5 * 1000 + 2 * 3 * 34 + 2 * 34);
  const CircuitTCost without =
      aa_circuit_tcost(10, 3, 2, 1000, 1000, false);
  CHECK(without.t_count == 5 * 1000 + 2 * 3 * 34);
  CHECK_THROWS_AS(aa_circuit_tcost(1, 1, 1, 10, 10), Error);
}

TEST_CASE("plan totals add up") {
  AAPlan plan;
  plan.entries.push_back({0, 0, 1, 100, 0, false});
  plan.entries.push_back({1, 2, 5, 100, 1, false});
  plan.entries.push_back({1, 1, 3, 100, 1, true});
  plan.direct_shots = 500;
  plan.direct_steps = 2;
  CHECK(plan.q_tot_aa() == 100 * 1 + 100 * 5 + 100 * 3);
  CHECK(plan.q_tot_dir() == 500 * 5);
  CHECK(plan.q_tot() == plan.q_tot_aa() + plan.q_tot_dir());
  CHECK(plan.shots_tot() == 800);
  for (const auto& e : plan.entries) {
    CHECK(e.queries == 2 * e.steps + 1);
  }
}
