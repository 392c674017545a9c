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

// vqpt: learn an unknown unitary with a layered parametric circuit.
//
//   vqpt learn CONFIG [overrides]
//   vqpt sweep-dt CONFIG --dts 0.01,0.08,0.15 [overrides]
//   vqpt validate THETA_JSON CONFIG [--fresh-index K]
//
// Exit status: 0 success, 1 runtime failure, 2 invalid input.

#include <iostream>

#include "CLI11.hpp"
#include "vqpt/experiment.hpp"

namespace {

void add_overrides(CLI::App* cmd, vqpt::ConfigOverrides& o) {
  cmd->add_option("--qubits", o.qubits, "Number of qubits n");
  cmd->add_option("--depth", o.depth, "Ansatz depth d");
  cmd->add_option("--num-states", o.num_states, "Training set size N");
  cmd->add_option("--trials", o.trials, "Independent trials");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--dt", o.dt, "XXZ evolution time");
  cmd->add_option("--output", o.output, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational process tomography on a statevector simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", VQPT_VERSION);

  std::string config_path;
  std::string theta_path;
  vqpt::ConfigOverrides overrides;
  std::vector<double> dts;
  std::uint64_t fresh_index = 0;
  bool quiet = false;

  auto* learn = app.add_subcommand("learn", "Run an experiment and write artifacts");
  learn->add_option("config", config_path, "Experiment config (JSON)")->required();
  learn->add_flag("--quiet", quiet, "Suppress progress on stderr");
  add_overrides(learn, overrides);

  auto* sweep = app.add_subcommand("sweep-dt", "One experiment per XXZ evolution time");
  sweep->add_option("config", config_path, "Experiment config (JSON)")->required();
  sweep->add_option("--dts", dts, "Evolution times")->required()->delimiter(',');
  sweep->add_flag("--quiet", quiet, "Suppress progress on stderr");
  add_overrides(sweep, overrides);

  auto* validate = app.add_subcommand("validate", "Score saved parameters on a fresh validation set");
  validate->add_option("theta", theta_path, "theta_best.json")->required();
  validate->add_option("config", config_path, "Experiment config (JSON)")->required();
  validate->add_option("--fresh-index", fresh_index, "Which fresh validation stream to draw");

  CLI11_PARSE(app, argc, argv);

  vqpt::ExperimentConfig config;
  try {
    config = vqpt::load_config(config_path);
    if (!validate->parsed()) vqpt::apply_overrides(config, overrides);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  vqpt::RunOptions options;
  options.log = quiet ? nullptr : &std::cerr;

  try {
    if (learn->parsed()) {
      const auto outcome = vqpt::cmd_learn(config, options);
      const auto& r = outcome.result;
      nlohmann::json summary = {{"result", outcome.result_path.string()},
                                {"max_similarity", r.stats.max},
                                {"mean_similarity", r.stats.mean},
                                {"std_similarity", r.stats.std},
                                {"best_trial", r.best_index},
                                {"best_accuracy", r.best().accuracy},
                                {"best_similarity", r.best().similarity}};
      std::cout << summary.dump(2) << '\n';
    } else if (sweep->parsed()) {
      const auto rows = vqpt::cmd_sweep_dt(config, dts, options);
      std::cout << "dt,max_similarity,mean_similarity\n";
      for (const auto& row : rows) {
        std::cout << row.dt << ',' << row.max_similarity << ',' << row.mean_similarity << '\n';
      }
    } else {
      const auto report = vqpt::cmd_validate(theta_path, config, fresh_index);
      std::cout << report.to_json().dump(2) << '\n';
    }
  } catch (const vqpt::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
