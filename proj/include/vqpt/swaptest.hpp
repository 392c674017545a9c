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

// Overlap estimation through SWAP-test statistics.
//
// The standard SWAP test yields a = |<psi|phi>|^2. Post-selecting an ancilla
// prepares xi = (psi + phi)/|psi + phi| with probability p0 = (1 + Re<psi|phi>)/2,
// and a second SWAP test yields f = |<psi|xi>|^2. With b = 2 p0 f = |1 + c|^2 / 2
// the complex overlap c = <psi|phi> is recovered as
//
//   Re c  = b - (a + 1)/2
//   |Im c| = sqrt((a + 1) b - b^2 - (a - 1)^2 / 4)
//
// Measurement statistics are computed from the statevectors; the ancilla
// circuits are not simulated gate by gate.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "vqpt/rng.hpp"
#include "vqpt/simcore.hpp"

namespace vqpt {

/// Number of measurement repetitions; zero means exact probabilities.
class Shots {
 public:
  constexpr Shots() = default;
  constexpr explicit Shots(std::int64_t count) : count_(count) {
    if (count < 0) throw std::invalid_argument("shot count must be >= 0");
  }
  static constexpr Shots exact() { return Shots(); }

  constexpr bool is_exact() const { return count_ == 0; }
  constexpr std::int64_t count() const { return count_; }
  bool operator==(const Shots&) const = default;

 private:
  std::int64_t count_ = 0;
};

/// psi + phi vanishes: the post-selection never succeeds.
class DegenerateSuperposition : public std::domain_error {
 public:
  DegenerateSuperposition()
      : std::domain_error("superposition of opposite states has zero norm") {}
};

struct OverlapEstimate {
  double a = 0.0;
  double b = 0.0;
  double p0 = 0.0;
  double f = 0.0;
  double c_re = 0.0;
  double c_im_abs = 0.0;
  Shots shots;
  /// psi = -phi; c is reported as exactly -1.
  bool degenerate = false;
};

/// |<a|b>|^2, or 1 - 2 * (fraction of ancilla-1 outcomes) under finite shots,
/// clamped to [0, 1]. `rng` is required when shots are finite.
double fidelity(const StateVector& a, const StateVector& b, Shots shots = {},
                Rng* rng = nullptr);

struct Superposition {
  StateVector xi;
  double p0;
};

/// Throws DegenerateSuperposition when |psi + phi| <= 1e-12.
Superposition superposition_state(const StateVector& psi, const StateVector& phi);

OverlapEstimate generalized_overlap(const StateVector& psi,
                                    const StateVector& phi, Shots shots = {},
                                    Rng* rng = nullptr);

}  // namespace vqpt
