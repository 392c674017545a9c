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

// Random input states and (input, U input) datasets.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vqpt/rng.hpp"
#include "vqpt/simcore.hpp"

namespace vqpt {

/// Ry(angle_q) on every qubit of |0...0>, followed by CZ(control, target)
/// for each listed pair.
struct StateRecipe {
  std::vector<double> ry_angles;
  std::vector<std::pair<int, int>> cz_pairs;

  int num_qubits() const { return static_cast<int>(ry_angles.size()); }
  bool operator==(const StateRecipe&) const = default;
};

StateVector prepare_state(const StateRecipe& recipe);

/// Default number of CZ gates per sampled state: one per qubit.
inline constexpr int kCzPerQubit = -1;

/// Angles uniform on [0, 2pi); CZ pairs uniform over ordered distinct pairs.
/// num_cz < 0 means n gates. A 1-qubit register gets no CZ gates.
std::pair<StateRecipe, StateVector> sample_state(int num_qubits, Rng& rng,
                                                 int num_cz = kCzPerQubit);

enum class DatasetRole { kTraining, kValidation };

std::string_view to_string(DatasetRole role);

struct Dataset {
  DatasetRole role = DatasetRole::kTraining;
  std::uint64_t seed = 0;
  std::vector<StateRecipe> recipes;
  std::vector<StateVector> inputs;
  std::vector<StateVector> ideal_outputs;

  std::size_t size() const { return inputs.size(); }
};

/// Draws `count` states from Rng(seed) and pushes each through the target.
Dataset make_dataset(int num_qubits, int count, const DenseUnitary& target,
                     std::uint64_t seed, DatasetRole role,
                     int num_cz = kCzPerQubit);

/// Rebuilds inputs and ideal outputs from stored recipes.
Dataset dataset_from_recipes(std::vector<StateRecipe> recipes,
                             const DenseUnitary& target, std::uint64_t seed,
                             DatasetRole role);

/// {"role", "seed", "recipes": [{"ry_angles": [...], "cz_pairs": [[c,t],..]}]}
nlohmann::json dataset_to_json(const Dataset& dataset);
/// Parses the recipe list and replays it through `target`.
Dataset dataset_from_json(const nlohmann::json& j, const DenseUnitary& target);

}  // namespace vqpt
