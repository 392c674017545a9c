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

// Loss, gradients, metrics and the multi-trial training driver.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vqpt/ansatz.hpp"
#include "vqpt/datasets.hpp"
#include "vqpt/simcore.hpp"
#include "vqpt/swaptest.hpp"

namespace vqpt {

enum class OverlapMode { kDirect, kSwapTest };
enum class GradientMode { kExact, kParameterShift };
enum class OptimizerMethod { kAdam, kSgd };

std::string_view to_string(OverlapMode mode);
std::string_view to_string(GradientMode mode);
std::string_view to_string(OptimizerMethod method);
OverlapMode parse_overlap_mode(std::string_view name);
GradientMode parse_gradient_mode(std::string_view name);
OptimizerMethod parse_optimizer_method(std::string_view name);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::kAdam;
  double learning_rate = 0.01;
  int max_epochs = 2000;
  double loss_threshold = 1e-6;
  /// Epochs without a loss improvement above 1e-9 before stopping; 0 disables.
  int plateau_patience = 200;
  GradientMode gradient_mode = GradientMode::kExact;
  OverlapMode overlap_mode = OverlapMode::kDirect;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
  bool operator==(const OptimizerConfig&) const = default;
};

struct LossReport {
  /// Mean of the per-state distances.
  double value = 0.0;
  /// 2 - 2 Re<ideal_j|C(theta) psi_j>, one per training state.
  std::vector<double> distances;
};

/// Requires a training-role dataset.
LossReport loss(const Ansatz& ansatz, std::span<const double> theta,
                const Dataset& dataset, OverlapMode mode = OverlapMode::kDirect,
                Shots shots = {}, Rng* rng = nullptr);

/// Adjoint-mode derivative of the direct-overlap loss.
std::vector<double> gradient_exact(const Ansatz& ansatz,
                                   std::span<const double> theta,
                                   const Dataset& dataset);

/// Loss and its exact gradient from one forward/backward sweep per state.
LossReport loss_and_gradient(const Ansatz& ansatz, std::span<const double> theta,
                             const Dataset& dataset, std::vector<double>& grad);

/// Two-term (+-pi/2) shift rule applied to the SWAP-test probabilities.
///
/// a = |<ideal|C psi>|^2 is a plain expectation value, so its shift rule is
/// exact. b = 2 p0 f comes from a circuit where C(theta) is controlled by the
/// post-selection ancilla; each controlled rotation is split into a free
/// rotation and an ancilla-correlated rotation, both at half the angle, and the
/// shift rule is applied to each piece. The loss gradient follows from
/// Re c = b - (a + 1)/2.
std::vector<double> gradient_parameter_shift(const Ansatz& ansatz,
                                             std::span<const double> theta,
                                             const Dataset& dataset);

/// Shift-rule derivative of the mean fidelity (1/N) sum_j a_j alone.
std::vector<double> fidelity_gradient_parameter_shift(
    const Ansatz& ansatz, std::span<const double> theta, const Dataset& dataset);

/// 1 - ||C - U||_F / (2 ||U||_F). Sensitive to global phase.
double similarity(const DenseUnitary& circuit, const DenseUnitary& target);

/// similarity() maximised over a global phase on the circuit.
double phase_aligned_similarity(const DenseUnitary& circuit,
                                const DenseUnitary& target);

/// Mean |<ideal_j|C(theta) phi_j>| over a validation-role dataset, each
/// magnitude taken as sqrt of a SWAP-test fidelity.
double accuracy(const Ansatz& ansatz, std::span<const double> theta,
                const Dataset& validation, Shots shots = {}, Rng* rng = nullptr);

double pearson_correlation(std::span<const double> x, std::span<const double> y);

enum class StopReason { kThreshold, kPlateau, kMaxEpochs, kFailed };
std::string_view to_string(StopReason reason);

struct TrialRecord {
  int trial_index = 0;
  std::uint64_t trial_seed = 0;
  int epochs_run = 0;
  std::vector<double> loss_history;
  /// Parameters at the lowest recorded loss.
  std::vector<double> theta_final;
  double final_loss = 0.0;
  double similarity = 0.0;
  double phase_aligned_similarity = 0.0;
  double accuracy = 0.0;
  StopReason stop_reason = StopReason::kMaxEpochs;
  bool failed = false;
  std::string failure;
};

/// (trial_index, epoch, loss)
using ProgressCallback = std::function<void(int, int, double)>;

struct TrialInputs {
  const Ansatz& ansatz;
  const Dataset& training;
  const Dataset& validation;
  const DenseUnitary& target;
};

/// Initial parameters: uniform on [0, 2pi) per slot from the kInit stream.
std::vector<double> initial_parameters(int count, std::uint64_t trial_seed);

/// Optimizes from initial_parameters(trial_seed). Non-finite loss or gradient
/// marks the record failed instead of throwing.
TrialRecord run_trial(const OptimizerConfig& config, const TrialInputs& inputs,
                      std::uint64_t trial_seed, Shots shots = {},
                      int trial_index = 0, const ProgressCallback& progress = {});

/// Same, from caller-supplied starting parameters.
TrialRecord run_trial_from(const OptimizerConfig& config,
                           const TrialInputs& inputs,
                           std::vector<double> theta, std::uint64_t trial_seed,
                           Shots shots = {}, int trial_index = 0,
                           const ProgressCallback& progress = {});

struct ExperimentSetup {
  Ansatz ansatz;
  Dataset training;
  Dataset validation;
  DenseUnitary target;
  OptimizerConfig optimizer;
  int trials = 100;
  std::uint64_t master_seed = 0;
  Shots shots;
  /// Worker threads; 0 picks the hardware concurrency.
  int threads = 0;
  ProgressCallback progress;
};

struct SimilarityStats {
  double max = 0.0;
  double mean = 0.0;
  /// Population standard deviation.
  double std = 0.0;
  int completed = 0;
  int failed = 0;
};

class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentResult {
  std::vector<TrialRecord> trials;
  /// Completed trial with the highest validation accuracy (lowest index on ties).
  std::size_t best_index = 0;
  SimilarityStats stats;
  /// Pearson correlation of accuracy and similarity over completed trials.
  double accuracy_similarity_correlation = 0.0;

  const TrialRecord& best() const { return trials.at(best_index); }
};

/// Runs setup.trials independent trials; trial t uses
/// derive_seed(master_seed, kTrial, t). Throws ExperimentError when every
/// trial fails.
ExperimentResult run_experiment(const ExperimentSetup& setup);

SimilarityStats similarity_stats(std::span<const TrialRecord> trials);

}  // namespace vqpt
