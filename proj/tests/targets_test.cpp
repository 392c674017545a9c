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

#include "vqpt/targets.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"

namespace vqpt {
namespace {

using testing::Mat;
using testing::pauli;
using testing::pauli_pair;

Mat kron_xxz(const XXZParams& p) {
  const std::size_t dim = std::size_t{1} << p.n;
  Mat h = Mat::Zero(dim, dim);
  for (int l = 0; l + 1 < p.n; ++l) {
    h += p.J * (pauli_pair('X', l, 'X', l + 1, p.n) + pauli_pair('Y', l, 'Y', l + 1, p.n));
    h += p.delta * pauli_pair('Z', l, 'Z', l + 1, p.n);
  }
  for (int l = 0; l < p.n; ++l) h += p.h * testing::embed(pauli('Z'), l, p.n);
  return h;
}

TEST(XXZHamiltonian, TwoSiteHandExpansion) {
  const Matrix h = build_xxz_hamiltonian({2, 1.0, 1.0, 0.1, 0.01});
  Matrix expected(4, 4);
  // Basis order |00>, |01>, |10>, |11> with qubit 0 the low bit.
  expected << 1.2, 0, 0, 0,
              0, -1, 2, 0,
              0, 2, -1, 0,
              0, 0, 0, 0.8;
  EXPECT_LT(testing::max_abs_diff(h, expected), 1e-15);
}

TEST(XXZHamiltonian, ZeroCouplingsGiveZero) {
  EXPECT_LT(build_xxz_hamiltonian({2, 0.0, 0.0, 0.0, 0.0}).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(XXZHamiltonian, MatchesKroneckerSum) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int n : {2, 3, 4}) {
    const XXZParams p{n, dist(gen), dist(gen), dist(gen), 0.0};
    const Matrix h = build_xxz_hamiltonian(p);
    EXPECT_LT(testing::max_abs_diff(h, kron_xxz(p)), 1e-12) << "n=" << n;
    EXPECT_LT((h - h.adjoint()).norm(), 1e-12);
  }
}

TEST(XXZHamiltonian, ConservesMagnetisation) {
  for (int n = 2; n <= 6; ++n) {
    const Matrix h = build_xxz_hamiltonian({n, 0.7, 1.3, 0.2, 0.0});
    Mat total_z = Mat::Zero(h.rows(), h.cols());
    for (int q = 0; q < n; ++q) total_z += testing::embed(pauli('Z'), q, n);
    EXPECT_LT((h * total_z - total_z * h).norm(), 1e-12) << "n=" << n;
  }
}

TEST(XXZHamiltonian, InvalidParams) {
  EXPECT_THROW(build_xxz_hamiltonian({1, 1, 1, 0.1, 0.01}), std::invalid_argument);
  EXPECT_THROW(build_xxz_hamiltonian({2, 1, 1, 0.1, -0.5}), std::invalid_argument);
}

TEST(EvolveUnitary, ZeroTimeIsIdentity) {
  const auto u = evolve_unitary(build_xxz_hamiltonian({3, 1, 1, 0.1, 0}), 0.0);
  EXPECT_LT(testing::max_abs_diff(u.matrix(), Matrix::Identity(8, 8)), 1e-12);
}

TEST(EvolveUnitary, AllZerosIsEigenvector) {
  const Matrix h = build_xxz_hamiltonian({2, 1.0, 1.0, 0.1, 0});
  for (double dt : {0.01, 0.37, 2.5}) {
    const auto u = evolve_unitary(h, dt);
    const StateVector out = u.apply(StateVector(2));
    EXPECT_LT(std::abs(out[0] - std::exp(Complex(0, -1.2 * dt))), 1e-12);
    EXPECT_LT(std::abs(out[1]) + std::abs(out[2]) + std::abs(out[3]), 1e-12);
  }
}

TEST(EvolveUnitary, GroupProperties) {
  const Matrix h = build_xxz_hamiltonian({4, 1.0, 0.8, 0.1, 0});
  const auto a = evolve_unitary(h, 0.13);
  const auto b = evolve_unitary(h, 0.29);
  const auto ab = evolve_unitary(h, 0.42);
  const auto inverse = evolve_unitary(h, -0.13);
  EXPECT_LT(a.unitarity_error(), 1e-10);
  EXPECT_LT((a.matrix() * inverse.matrix() - Matrix::Identity(16, 16)).norm(), 1e-10);
  EXPECT_LT((b.matrix() * a.matrix() - ab.matrix()).norm(), 1e-10);
}

TEST(EvolveUnitary, RejectsNonSquare) {
  EXPECT_THROW(evolve_unitary(Matrix::Zero(4, 2), 0.1), DimensionError);
  EXPECT_THROW(evolve_unitary(Matrix::Zero(3, 3), 0.1), DimensionError);
}

TEST(RandomCircuit, DeterministicPerSeed) {
  const RQCParams p{4, 8, 123};
  EXPECT_EQ(build_random_circuit(p), build_random_circuit(p));
  EXPECT_NE(build_random_circuit(p), build_random_circuit({4, 8, 124}));
}

TEST(RandomCircuit, LayoutAndGateCount) {
  const auto gates = build_random_circuit({2, 1, 9});
  ASSERT_EQ(gates.size(), 7u);
  EXPECT_EQ(gates[0].kind, GateKind::H);
  EXPECT_EQ(gates[1].kind, GateKind::H);
  EXPECT_EQ(gates[2], Gate::cz(0, 1));
  for (int i : {3, 4}) {
    EXPECT_TRUE(gates[i].kind == GateKind::T || gates[i].kind == GateKind::SqrtX ||
                gates[i].kind == GateKind::SqrtY);
  }
  EXPECT_EQ(gates[5].kind, GateKind::H);
  EXPECT_EQ(gates[6].kind, GateKind::H);

  // Even depth index -> even pairs, odd -> odd pairs.
  const auto five = build_random_circuit({5, 2, 1});
  std::vector<Gate> cz;
  for (const auto& g : five) {
    if (g.kind == GateKind::CZ) cz.push_back(g);
  }
  const std::vector<Gate> expected{Gate::cz(0, 1), Gate::cz(2, 3), Gate::cz(1, 2),
                                   Gate::cz(3, 4)};
  EXPECT_EQ(cz, expected);
}

TEST(RandomCircuit, UniformGateChoice) {
  const auto gates = build_random_circuit({10, 300, 2024});
  std::map<GateKind, int> counts;
  int draws = 0;
  for (const auto& g : gates) {
    if (g.kind == GateKind::T || g.kind == GateKind::SqrtX || g.kind == GateKind::SqrtY) {
      ++counts[g.kind];
      ++draws;
    }
  }
  ASSERT_EQ(draws, 3000);
  for (auto kind : {GateKind::T, GateKind::SqrtX, GateKind::SqrtY}) {
    EXPECT_NEAR(counts[kind] / 3000.0, 1.0 / 3.0, 0.05) << to_string(kind);
  }
}

TEST(RandomCircuit, UnitaryTarget) {
  const auto t = make_rqc_target({4, 8, 7});
  EXPECT_LT(t.unitary.unitarity_error(), 1e-10);
  EXPECT_THROW(build_random_circuit({1, 3, 0}), std::invalid_argument);
  EXPECT_THROW(build_random_circuit({3, 0, 0}), std::invalid_argument);
}

TEST(TargetProvenance, JsonRoundTrip) {
  const TargetProvenance xxz = XXZParams{3, 1.0, 0.5, 0.1, 0.08};
  const TargetProvenance rqc = RQCParams{4, 8, 18446744073709551557ULL};
  for (const auto& p : {xxz, rqc}) {
    nlohmann::json j;
    to_json(j, p);
    EXPECT_EQ(provenance_from_json(j), p);
  }
}

}  // namespace
}  // namespace vqpt
