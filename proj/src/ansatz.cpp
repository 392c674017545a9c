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

#include <stdexcept>

namespace vqpt {

std::string_view to_string(EntanglerPattern pattern) {
  switch (pattern) {
    case EntanglerPattern::kBrick: return "brick";
    case EntanglerPattern::kLadder: return "ladder";
  }
  return "?";
}

EntanglerPattern parse_pattern(std::string_view name) {
  if (name == "brick") return EntanglerPattern::kBrick;
  if (name == "ladder") return EntanglerPattern::kLadder;
  throw std::invalid_argument("unknown entangler pattern '" +
                              std::string(name) + "'");
}

std::vector<std::pair<int, int>> entangler_pairs(EntanglerPattern pattern,
                                                 int num_qubits, int layer) {
  std::vector<std::pair<int, int>> pairs;
  if (pattern == EntanglerPattern::kLadder) {
    for (int q = 0; q + 1 < num_qubits; ++q) pairs.emplace_back(q, q + 1);
    return pairs;
  }
  for (int q = layer % 2; q + 1 < num_qubits; q += 2) {
    pairs.emplace_back(q, q + 1);
  }
  if (pairs.empty() && num_qubits == 2) pairs.emplace_back(0, 1);
  return pairs;
}

Ansatz::Ansatz(int num_qubits, int depth, EntanglerPattern pattern)
    : num_qubits_(num_qubits), depth_(depth), pattern_(pattern) {
  check_qubit_count(num_qubits);
  if (depth < 0) throw std::invalid_argument("ansatz depth must be >= 0");

  auto single_layer = [&] {
    for (int q = 0; q < num_qubits_; ++q) {
      for (GateKind kind : {GateKind::Rz, GateKind::Ry, GateKind::Rz}) {
        Gate g{kind, {q, -1}};
        g.param = num_params_++;
        layout_.push_back(g);
      }
    }
  };

  single_layer();
  for (int layer = 0; layer < depth_; ++layer) {
    for (auto [a, b] : entangler_pairs(pattern_, num_qubits_, layer)) {
      layout_.push_back(Gate::cz(a, b));
    }
    single_layer();
  }
}

void Ansatz::check_params(std::span<const double> theta) const {
  if (theta.size() != static_cast<std::size_t>(num_params_)) {
    throw std::invalid_argument("expected " + std::to_string(num_params_) +
                                " parameters, got " +
                                std::to_string(theta.size()));
  }
}

std::vector<Gate> Ansatz::bind(std::span<const double> theta) const {
  check_params(theta);
  std::vector<Gate> gates = layout_;
  for (auto& g : gates) {
    if (g.param >= 0) g.angle = theta[g.param];
  }
  return gates;
}

void Ansatz::apply(std::span<const double> theta, StateVector& state) const {
  check_params(theta);
  if (state.num_qubits() != num_qubits_) {
    throw DimensionError("ansatz and state sizes differ");
  }
  for (const auto& g : layout_) {
    if (g.param >= 0) {
      Gate bound = g;
      bound.angle = theta[g.param];
      apply_gate(state, bound);
    } else {
      apply_gate(state, g);
    }
  }
}

Ansatz build_ansatz(int num_qubits, int depth, EntanglerPattern pattern) {
  return Ansatz(num_qubits, depth, pattern);
}

StateVector apply_ansatz(const Ansatz& ansatz, std::span<const double> theta,
                         StateVector input) {
  ansatz.apply(theta, input);
  return input;
}

void to_json(nlohmann::json& j, const Ansatz& ansatz) {
  j = nlohmann::json{{"n", ansatz.num_qubits()},
                     {"d", ansatz.depth()},
                     {"pattern", std::string(to_string(ansatz.pattern()))}};
}

Ansatz ansatz_from_json(const nlohmann::json& j) {
  return Ansatz(j.at("n").get<int>(), j.at("d").get<int>(),
                parse_pattern(j.value("pattern", std::string("ladder"))));
}

}  // namespace vqpt
