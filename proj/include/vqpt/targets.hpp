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

// Ground-truth processes: Heisenberg XXZ time evolution (open chain, hbar=1)
// and seeded random circuits of H / brick CZ / {T, sqrt X, sqrt Y} layers.

#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "json.hpp"
#include "vqpt/simcore.hpp"

namespace vqpt {

struct XXZParams {
  int n = 2;
  double J = 1.0;
  double delta = 1.0;
  double h = 0.1;
  double dt = 0.01;

  bool operator==(const XXZParams&) const = default;
};

struct RQCParams {
  int n = 2;
  int depth = 1;
  std::uint64_t seed = 0;

  bool operator==(const RQCParams&) const = default;
};

using TargetProvenance = std::variant<XXZParams, RQCParams>;

struct TargetProcess {
  DenseUnitary unitary;
  TargetProvenance provenance;

  int num_qubits() const { return unitary.num_qubits(); }
};

/// sum_{l<n-1} [J(X_l X_{l+1} + Y_l Y_{l+1}) + delta Z_l Z_{l+1}] + h sum_l Z_l
Matrix build_xxz_hamiltonian(const XXZParams& p);

/// exp(-i H dt) through a Hermitian eigendecomposition.
/// Throws std::runtime_error if the eigensolver does not converge.
DenseUnitary evolve_unitary(const Matrix& hamiltonian, double dt);

std::vector<Gate> build_random_circuit(const RQCParams& p);

TargetProcess make_xxz_target(const XXZParams& p);
TargetProcess make_rqc_target(const RQCParams& p);

void to_json(nlohmann::json& j, const TargetProvenance& provenance);
TargetProvenance provenance_from_json(const nlohmann::json& j);

}  // namespace vqpt
