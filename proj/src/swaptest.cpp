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

#include "vqpt/swaptest.hpp"

#include <algorithm>
#include <cmath>

namespace vqpt {

namespace {

constexpr double kDegenerateNorm = 1e-12;

Rng& require(Rng* rng) {
  if (rng == nullptr) {
    throw std::invalid_argument("finite-shot estimation needs an Rng");
  }
  return *rng;
}

double sample_fraction(double p, Shots shots, Rng& rng) {
  return static_cast<double>(rng.binomial(shots.count(), p)) /
         static_cast<double>(shots.count());
}

}  // namespace

double fidelity(const StateVector& a, const StateVector& b, Shots shots,
                Rng* rng) {
  const double exact = std::clamp(std::norm(inner_product(a, b)), 0.0, 1.0);
  if (shots.is_exact()) return exact;
  const double ones = sample_fraction((1.0 - exact) / 2.0, shots, require(rng));
  return std::clamp(1.0 - 2.0 * ones, 0.0, 1.0);
}

Superposition superposition_state(const StateVector& psi,
                                  const StateVector& phi) {
  if (psi.num_qubits() != phi.num_qubits()) {
    throw DimensionError("superposition_state: register sizes differ");
  }
  StateVector xi = psi;
  xi.as_vector() += phi.as_vector();
  const double norm = std::sqrt(xi.norm_squared());
  if (norm <= kDegenerateNorm) throw DegenerateSuperposition();
  xi.as_vector() /= norm;
  const double p0 = std::clamp((1.0 + inner_product(psi, phi).real()) / 2.0, 0.0, 1.0);
  return {std::move(xi), p0};
}

OverlapEstimate generalized_overlap(const StateVector& psi,
                                    const StateVector& phi, Shots shots,
                                    Rng* rng) {
  OverlapEstimate est;
  est.shots = shots;
  est.a = fidelity(psi, phi, shots, rng);

  Superposition sup = [&]() -> Superposition {
    try {
      return superposition_state(psi, phi);
    } catch (const DegenerateSuperposition&) {
      return {psi, 0.0};
    }
  }();
  if (sup.p0 == 0.0) {
    est.degenerate = true;
    est.a = 1.0;
    est.c_re = -1.0;
    return est;
  }

  est.p0 = shots.is_exact() ? sup.p0
                            : sample_fraction(sup.p0, shots, require(rng));
  if (est.p0 == 0.0) {
    // Every post-selection failed: only c = -1 is consistent with that.
    est.degenerate = true;
    est.c_re = -1.0;
    return est;
  }
  est.f = fidelity(psi, sup.xi, shots, rng);
  est.b = 2.0 * est.p0 * est.f;
  est.c_re = est.b - (est.a + 1.0) / 2.0;
  const double radicand = (est.a + 1.0) * est.b - est.b * est.b -
                          (est.a - 1.0) * (est.a - 1.0) / 4.0;
  est.c_im_abs = std::sqrt(std::max(0.0, radicand));
  return est;
}

}  // namespace vqpt
