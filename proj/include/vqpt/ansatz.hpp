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

// Layered parametric circuit: a single-qubit layer (Rz, Ry, Rz on every
// qubit), then `depth` repetitions of [entangling CZ layer, single-qubit
// layer]. 3n(d+1) parameters in total.

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vqpt/simcore.hpp"

namespace vqpt {

/// Wiring of the fixed CZ layers.
enum class EntanglerPattern {
  /// Every layer is the full nearest-neighbour chain (0,1),(1,2),...
  kLadder,
  /// Layer l pairs (0,1),(2,3),... when l is even and (1,2),(3,4),... when
  /// odd. A 2-qubit register has no odd pairs, so its odd layers reuse (0,1).
  kBrick,
};

std::string_view to_string(EntanglerPattern pattern);
EntanglerPattern parse_pattern(std::string_view name);

/// CZ pairs of entangling layer `layer` (0-based).
std::vector<std::pair<int, int>> entangler_pairs(EntanglerPattern pattern,
                                                 int num_qubits, int layer);

class Ansatz {
 public:
  Ansatz(int num_qubits, int depth,
         EntanglerPattern pattern = EntanglerPattern::kLadder);

  int num_qubits() const { return num_qubits_; }
  int depth() const { return depth_; }
  EntanglerPattern pattern() const { return pattern_; }
  int num_params() const { return num_params_; }

  /// Gate list; rotation gates carry their parameter slot and angle 0.
  std::span<const Gate> layout() const { return layout_; }

  /// Layout with angles substituted from theta.
  std::vector<Gate> bind(std::span<const double> theta) const;

  /// Applies the bound circuit in place.
  void apply(std::span<const double> theta, StateVector& state) const;

  /// Throws std::invalid_argument unless theta.size() == num_params().
  void check_params(std::span<const double> theta) const;

  bool operator==(const Ansatz& other) const {
    return num_qubits_ == other.num_qubits_ && depth_ == other.depth_ &&
           pattern_ == other.pattern_;
  }

 private:
  int num_qubits_;
  int depth_;
  EntanglerPattern pattern_;
  int num_params_ = 0;
  std::vector<Gate> layout_;
};

Ansatz build_ansatz(int num_qubits, int depth,
                    EntanglerPattern pattern = EntanglerPattern::kLadder);

StateVector apply_ansatz(const Ansatz& ansatz, std::span<const double> theta,
                         StateVector input);

/// {"n": .., "d": .., "pattern": ".."}
void to_json(nlohmann::json& j, const Ansatz& ansatz);
Ansatz ansatz_from_json(const nlohmann::json& j);

}  // namespace vqpt
