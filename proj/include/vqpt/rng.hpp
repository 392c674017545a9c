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

// Seeded random streams.
//
// Every random draw in a run descends from one master seed. Child seeds are
// derived with derive_seed(parent, purpose, index), a SplitMix64 mix, so any
// stream (a dataset, a trial's initialization, a trial's shot noise) can be
// regenerated in isolation:
//
//   master --(kTrainingSet)------------> training dataset
//   master --(kValidationSet)----------> validation dataset
//   master --(kFreshValidationSet, i)--> re-validation datasets
//   master --(kTrial, t)---------------> trial seed t
//   trial seed --(kInit)---------------> initial parameters
//   trial seed --(kShots)--------------> measurement sampling

#pragma once

#include <cstdint>
#include <random>

namespace vqpt {

enum class StreamPurpose : std::uint64_t {
  kTrainingSet = 1,
  kValidationSet = 2,
  kFreshValidationSet = 3,
  kTrial = 4,
  kInit = 5,
  kShots = 6,
};

std::uint64_t derive_seed(std::uint64_t parent, StreamPurpose purpose,
                          std::uint64_t index = 0);

/// Thin wrapper over mt19937_64 with platform-independent uniform draws.
class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer on [0, bound), rejection-sampled; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Number of successes in `trials` Bernoulli(p) draws.
  std::int64_t binomial(std::int64_t trials, double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vqpt
