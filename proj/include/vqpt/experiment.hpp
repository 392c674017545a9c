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

// Experiment configuration, artifact files and the learn / sweep-dt /
// validate commands behind the vqpt tool.
//
// Output files (all written once, after every trial has finished):
//   result.json      schema_version, code_version, generated_at, config echo,
//                    target provenance, dataset recipes, every trial record,
//                    best_trial (max validation accuracy) and summary stats
//   loss_curves.csv  epoch,trial,loss
//   theta_best.json  n, d, pattern, theta of the selected trial
//   dt_sweep.csv     dt,max_similarity,mean_similarity

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "vqpt/ansatz.hpp"
#include "vqpt/swaptest.hpp"
#include "vqpt/targets.hpp"
#include "vqpt/training.hpp"

namespace vqpt {

inline constexpr int kResultSchemaVersion = 1;

/// Config problem, tagged with the 1-based line it was found on (0 if unknown).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

struct ExperimentConfig {
  /// The target's n always equals `n`.
  TargetProvenance target = XXZParams{};
  int n = 2;
  int d = 2;
  int N = 4;
  int trials = 100;
  std::uint64_t master_seed = 0;
  OptimizerConfig optimizer;
  Shots shots;
  /// 0 means "same as N".
  int validation_size = 0;
  EntanglerPattern pattern = EntanglerPattern::kLadder;
  /// Negative means one CZ per qubit.
  int cz_per_state = kCzPerQubit;
  int progress_interval = 0;
  std::string output_dir = "vqpt_out";

  int effective_validation_size() const { return validation_size > 0 ? validation_size : N; }
  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates a config document. Errors carry the line number.
ExperimentConfig parse_config(std::string_view text,
                              std::string_view source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

/// Throws std::invalid_argument (or CapacityError) on violated invariants.
void validate_config(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);

/// Flags that override config fields.
struct ConfigOverrides {
  std::optional<int> qubits;
  std::optional<int> depth;
  std::optional<int> num_states;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> dt;
  std::optional<std::string> output;
};

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

TargetProcess build_target(const ExperimentConfig& config);

/// Target, datasets (training from kTrainingSet, validation from
/// kValidationSet) and optimizer settings ready for run_experiment.
ExperimentSetup prepare_experiment(const ExperimentConfig& config,
                                   const TargetProcess& target);

struct RunOptions {
  /// 0: VQPT_THREADS if set, else hardware concurrency.
  int threads = 0;
  /// Progress sink (epoch/loss lines); nullptr silences progress.
  std::ostream* log = nullptr;
  /// Written to result.json as generated_at; empty means "now" (UTC).
  std::string timestamp;
};

/// VQPT_THREADS, when set to a positive integer.
std::optional<int> threads_from_env();

nlohmann::json trial_to_json(const TrialRecord& trial);
TrialRecord trial_from_json(const nlohmann::json& j);

nlohmann::json result_to_json(const ExperimentConfig& config,
                              const TargetProcess& target,
                              const ExperimentSetup& setup,
                              const ExperimentResult& result,
                              const std::string& timestamp);

/// Trial records, best index and summary statistics from a result.json.
ExperimentResult result_from_json(const nlohmann::json& j);

struct LearnOutcome {
  ExperimentResult result;
  std::filesystem::path result_path;
};

/// Runs the experiment and writes result.json, loss_curves.csv and
/// theta_best.json into config.output_dir.
LearnOutcome cmd_learn(const ExperimentConfig& config, const RunOptions& options = {});

struct DtSweepRow {
  double dt;
  double max_similarity;
  double mean_similarity;
};

/// One experiment per dt (xxz targets only); writes dt_sweep.csv.
std::vector<DtSweepRow> cmd_sweep_dt(const ExperimentConfig& config,
                                     std::span<const double> dts,
                                     const RunOptions& options = {});

struct SavedParameters {
  int n = 0;
  int d = 0;
  EntanglerPattern pattern = EntanglerPattern::kLadder;
  std::vector<double> theta;
  std::optional<double> recorded_accuracy;
  std::optional<double> recorded_similarity;
};

nlohmann::json saved_parameters_to_json(const SavedParameters& saved);
SavedParameters load_saved_parameters(const std::filesystem::path& path);

struct ValidationReport {
  double accuracy = 0.0;
  double similarity = 0.0;
  double phase_aligned_similarity = 0.0;
  std::uint64_t validation_seed = 0;
  std::optional<double> recorded_accuracy;

  nlohmann::json to_json() const;
};

/// Scores saved parameters on a fresh validation set drawn from
/// derive_seed(master_seed, kFreshValidationSet, fresh_index).
ValidationReport cmd_validate(const std::filesystem::path& theta_path,
                              const ExperimentConfig& config,
                              std::uint64_t fresh_index = 0);

}  // namespace vqpt
