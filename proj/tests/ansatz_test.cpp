// Copyright 2026 The VQPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqpt/ansatz.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "oracles.hpp"

namespace vqpt {
namespace {

std::vector<double> random_theta(int count, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> dist(0.0, 2 * std::numbers::pi);
  std::vector<double> theta(count);
  for (auto& t : theta) t = dist(gen);
  return theta;
}

TEST(BuildAnsatz, ParameterCounts) {
  EXPECT_EQ(build_ansatz(2, 2).num_params(), 18);
  EXPECT_EQ(build_ansatz(5, 6).num_params(), 105);
  for (int n = 1; n <= 6; ++n) {
    for (int d = 0; d <= 8; ++d) {
      for (auto pattern : {EntanglerPattern::kLadder, EntanglerPattern::kBrick}) {
        EXPECT_EQ(build_ansatz(n, d, pattern).num_params(), 3 * n * (d + 1));
      }
    }
  }
}

TEST(BuildAnsatz, SingleQubitDepthZero) {
  const Ansatz a = build_ansatz(1, 0);
  ASSERT_EQ(a.layout().size(), 3u);
  EXPECT_EQ(a.layout()[0].kind, GateKind::Rz);
  EXPECT_EQ(a.layout()[1].kind, GateKind::Ry);
  EXPECT_EQ(a.layout()[2].kind, GateKind::Rz);
  for (const auto& g : a.layout()) EXPECT_EQ(g.qubits[0], 0);
}

TEST(BuildAnsatz, LayerStructure) {
  for (auto pattern : {EntanglerPattern::kLadder, EntanglerPattern::kBrick}) {
    const int n = 4, d = 3;
    const Ansatz a = build_ansatz(n, d, pattern);
    std::size_t pos = 0;
    auto expect_single_layer = [&] {
      for (int q = 0; q < n; ++q) {
        for (GateKind k : {GateKind::Rz, GateKind::Ry, GateKind::Rz}) {
          ASSERT_LT(pos, a.layout().size());
          EXPECT_EQ(a.layout()[pos].kind, k);
          EXPECT_EQ(a.layout()[pos].qubits[0], q);
          ++pos;
        }
      }
    };
    expect_single_layer();
    for (int layer = 0; layer < d; ++layer) {
      for (auto [c, t] : entangler_pairs(pattern, n, layer)) {
        ASSERT_LT(pos, a.layout().size());
        EXPECT_EQ(a.layout()[pos], Gate::cz(c, t));
        ++pos;
      }
      expect_single_layer();
    }
    EXPECT_EQ(pos, a.layout().size());
  }
}

TEST(EntanglerPairs, BrickAndLadder) {
  using P = std::vector<std::pair<int, int>>;
  EXPECT_EQ(entangler_pairs(EntanglerPattern::kBrick, 5, 0), (P{{0, 1}, {2, 3}}));
  EXPECT_EQ(entangler_pairs(EntanglerPattern::kBrick, 5, 1), (P{{1, 2}, {3, 4}}));
  EXPECT_EQ(entangler_pairs(EntanglerPattern::kBrick, 2, 1), (P{{0, 1}}));
  EXPECT_EQ(entangler_pairs(EntanglerPattern::kLadder, 4, 7), (P{{0, 1}, {1, 2}, {2, 3}}));
  EXPECT_TRUE(entangler_pairs(EntanglerPattern::kLadder, 1, 0).empty());
}

TEST(BuildAnsatz, EverySlotExactlyOnce) {
  const Ansatz a = build_ansatz(3, 4);
  std::multiset<int> slots;
  for (const auto& g : a.layout()) {
    if (g.param >= 0) {
      EXPECT_TRUE(g.is_rotation());
      slots.insert(g.param);
    } else {
      EXPECT_EQ(g.kind, GateKind::CZ);
    }
  }
  ASSERT_EQ(static_cast<int>(slots.size()), a.num_params());
  for (int k = 0; k < a.num_params(); ++k) EXPECT_EQ(slots.count(k), 1u);
}

TEST(BuildAnsatz, RejectsInvalidShape) {
  EXPECT_THROW(build_ansatz(0, 1), std::invalid_argument);
  EXPECT_THROW(build_ansatz(2, -1), std::invalid_argument);
  EXPECT_THROW(build_ansatz(kMaxQubits + 1, 1), CapacityError);
}

TEST(ApplyAnsatz, ZeroAnglesDepthZeroIsIdentity) {
  std::mt19937_64 gen(3);
  const Ansatz a = build_ansatz(3, 0);
  const StateVector in = testing::random_state(3, gen);
  const StateVector out = apply_ansatz(a, std::vector<double>(a.num_params(), 0.0), in);
  EXPECT_LT(testing::max_abs_diff(out, in.as_vector()), 1e-15);
}

TEST(ApplyAnsatz, ZeroAnglesLeavesOnlyCZ) {
  std::mt19937_64 gen(4);
  const Ansatz a = build_ansatz(2, 1);
  const StateVector in = testing::random_state(2, gen);
  const StateVector out = apply_ansatz(a, std::vector<double>(a.num_params(), 0.0), in);
  const StateVector expected = applied(in, Gate::cz(0, 1));
  EXPECT_LT(testing::max_abs_diff(out, expected.as_vector()), 1e-15);
}

TEST(ApplyAnsatz, MatchesMatrixOracle) {
  std::mt19937_64 gen(5);
  const Ansatz a = build_ansatz(3, 2);
  for (int rep = 0; rep < 10; ++rep) {
    const auto theta = random_theta(a.num_params(), gen);
    const StateVector in = testing::random_state(3, gen);
    const Eigen::VectorXcd expected = testing::kron_circuit(a.bind(theta), 3) * in.as_vector();
    const StateVector out = apply_ansatz(a, theta, in);
    EXPECT_LT(testing::max_abs_diff(out, expected), 1e-12);
    EXPECT_NEAR(out.norm_squared(), in.norm_squared(), 1e-12);
  }
}

TEST(ApplyAnsatz, ParameterLengthMismatch) {
  const Ansatz a = build_ansatz(2, 1);
  EXPECT_THROW(apply_ansatz(a, std::vector<double>(5, 0.0), StateVector(2)),
               std::invalid_argument);
  EXPECT_THROW(apply_ansatz(a, std::vector<double>(a.num_params(), 0.0), StateVector(3)),
               DimensionError);
}

TEST(ApplyAnsatz, SlotsAreIndependent) {
  std::mt19937_64 gen(6);
  const Ansatz a = build_ansatz(3, 2);
  const auto theta = random_theta(a.num_params(), gen);
  const auto base = a.bind(theta);
  for (int k = 0; k < a.num_params(); ++k) {
    auto perturbed_theta = theta;
    perturbed_theta[k] += 0.37;
    const auto perturbed = a.bind(perturbed_theta);
    for (std::size_t g = 0; g < base.size(); ++g) {
      if (base[g].param == k) {
        EXPECT_NE(base[g].angle, perturbed[g].angle);
      } else {
        EXPECT_EQ(base[g], perturbed[g]);
      }
    }
  }
}

TEST(ApplyAnsatz, RotationPeriodFourPi) {
  std::mt19937_64 gen(8);
  const Ansatz a = build_ansatz(2, 2);
  const auto theta = random_theta(a.num_params(), gen);
  const auto u = circuit_to_unitary(a.bind(theta), 2);
  for (int k = 0; k < a.num_params(); ++k) {
    auto shifted = theta;
    shifted[k] += 4 * std::numbers::pi;
    const auto v = circuit_to_unitary(a.bind(shifted), 2);
    EXPECT_LT(testing::max_abs_diff(u.matrix(), v.matrix()), 1e-12) << "slot " << k;
  }
}

TEST(AnsatzJson, RoundTrip) {
  for (auto pattern : {EntanglerPattern::kLadder, EntanglerPattern::kBrick}) {
    const Ansatz a = build_ansatz(4, 3, pattern);
    nlohmann::json j = a;
    EXPECT_EQ(j.at("pattern"), std::string(to_string(pattern)));
    EXPECT_EQ(ansatz_from_json(j), a);
  }
  EXPECT_THROW(ansatz_from_json({{"n", 2}, {"d", 1}, {"pattern", "star"}}),
               std::invalid_argument);
}

}  // namespace
}  // namespace vqpt
