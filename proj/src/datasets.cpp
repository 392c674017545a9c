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

#include "vqpt/datasets.hpp"

#include <numbers>
#include <stdexcept>

namespace vqpt {

StateVector prepare_state(const StateRecipe& recipe) {
  const int n = recipe.num_qubits();
  StateVector state(n);
  for (int q = 0; q < n; ++q) apply_gate(state, Gate::ry(q, recipe.ry_angles[q]));
  for (auto [c, t] : recipe.cz_pairs) apply_gate(state, Gate::cz(c, t));
  return state;
}

std::pair<StateRecipe, StateVector> sample_state(int num_qubits, Rng& rng,
                                                 int num_cz) {
  check_qubit_count(num_qubits);
  StateRecipe recipe;
  recipe.ry_angles.resize(num_qubits);
  for (auto& angle : recipe.ry_angles) angle = rng.uniform(0.0, 2 * std::numbers::pi);
  if (num_qubits >= 2) {
    const int count = num_cz < 0 ? num_qubits : num_cz;
    const auto n = static_cast<std::uint64_t>(num_qubits);
    for (int k = 0; k < count; ++k) {
      const auto control = static_cast<int>(rng.below(n));
      auto target = static_cast<int>(rng.below(n - 1));
      if (target >= control) ++target;
      recipe.cz_pairs.emplace_back(control, target);
    }
  }
  StateVector state = prepare_state(recipe);
  return {std::move(recipe), std::move(state)};
}

std::string_view to_string(DatasetRole role) {
  return role == DatasetRole::kTraining ? "training" : "validation";
}

Dataset dataset_from_recipes(std::vector<StateRecipe> recipes,
                             const DenseUnitary& target, std::uint64_t seed,
                             DatasetRole role) {
  Dataset ds;
  ds.role = role;
  ds.seed = seed;
  ds.recipes = std::move(recipes);
  for (const auto& r : ds.recipes) {
    if (r.num_qubits() != target.num_qubits()) {
      throw DimensionError("recipe and target sizes differ");
    }
    ds.inputs.push_back(prepare_state(r));
    ds.ideal_outputs.push_back(target.apply(ds.inputs.back()));
  }
  return ds;
}

Dataset make_dataset(int num_qubits, int count, const DenseUnitary& target,
                     std::uint64_t seed, DatasetRole role, int num_cz) {
  check_qubit_count(num_qubits);
  if (count < 1) throw std::invalid_argument("dataset size must be >= 1");
  if (target.num_qubits() != num_qubits) {
    throw DimensionError("target acts on " +
                         std::to_string(target.num_qubits()) +
                         " qubits, dataset needs " + std::to_string(num_qubits));
  }
  Rng rng(seed);
  std::vector<StateRecipe> recipes;
  recipes.reserve(count);
  for (int j = 0; j < count; ++j) {
    recipes.push_back(sample_state(num_qubits, rng, num_cz).first);
  }
  return dataset_from_recipes(std::move(recipes), target, seed, role);
}

nlohmann::json dataset_to_json(const Dataset& dataset) {
  nlohmann::json recipes = nlohmann::json::array();
  for (const auto& r : dataset.recipes) {
    nlohmann::json pairs = nlohmann::json::array();
    for (auto [c, t] : r.cz_pairs) pairs.push_back({c, t});
    recipes.push_back({{"ry_angles", r.ry_angles}, {"cz_pairs", pairs}});
  }
  return {{"role", std::string(to_string(dataset.role))},
          {"seed", dataset.seed},
          {"recipes", recipes}};
}

Dataset dataset_from_json(const nlohmann::json& j, const DenseUnitary& target) {
  const auto role_name = j.at("role").get<std::string>();
  DatasetRole role;
  if (role_name == "training") {
    role = DatasetRole::kTraining;
  } else if (role_name == "validation") {
    role = DatasetRole::kValidation;
  } else {
    throw std::invalid_argument("unknown dataset role '" + role_name + "'");
  }
  std::vector<StateRecipe> recipes;
  for (const auto& r : j.at("recipes")) {
    StateRecipe recipe;
    recipe.ry_angles = r.at("ry_angles").get<std::vector<double>>();
    for (const auto& p : r.at("cz_pairs")) {
      recipe.cz_pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
    }
    recipes.push_back(std::move(recipe));
  }
  return dataset_from_recipes(std::move(recipes), target,
                              j.at("seed").get<std::uint64_t>(), role);
}

}  // namespace vqpt
