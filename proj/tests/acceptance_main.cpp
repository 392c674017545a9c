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

// Acceptance checks for the full pipeline. Prints one PASS/FAIL line per
// criterion and exits non-zero if any fails. VQPT_THREADS caps the workers.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "vqpt/experiment.hpp"

namespace {

using namespace vqpt;
namespace fs = std::filesystem;

int g_failures = 0;

void report(const char* id, bool ok, const std::string& detail, double seconds) {
  std::printf("[%s] %s  %s  (%.1fs)\n", ok ? "PASS" : "FAIL", id, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

void run_check(const char* id, const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  report(id, ok, detail, elapsed.count());
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int threads() { return threads_from_env().value_or(0); }

ExperimentConfig xxz_config(int n, int d, int count, int trials, std::uint64_t seed,
                            double dt = 0.01) {
  ExperimentConfig c;
  c.target = XXZParams{n, 1.0, 1.0, 0.1, dt};
  c.n = n;
  c.d = d;
  c.N = count;
  c.trials = trials;
  c.master_seed = seed;
  validate_config(c);
  return c;
}

ExperimentResult run(const ExperimentConfig& c) {
  const auto target = build_target(c);
  auto setup = prepare_experiment(c, target);
  setup.threads = threads();
  return run_experiment(setup);
}

bool table_rows(std::string& detail) {
  struct Row {
    int n, d, count, trials;
    double threshold;
  };
  bool ok = true;
  for (const Row& r : {Row{2, 2, 4, 20, 0.99}, Row{3, 3, 5, 50, 0.97}, Row{4, 4, 5, 50, 0.96}}) {
    const auto result = run(xxz_config(r.n, r.d, r.count, r.trials, 1));
    const bool row_ok = result.stats.max >= r.threshold;
    ok = ok && row_ok;
    detail += "(" + std::to_string(r.n) + "," + std::to_string(r.d) + "," +
              std::to_string(r.count) + ") max " + fmt("%.4f", result.stats.max) +
              fmt(" >= %.2f; ", r.threshold);
  }
  return ok;
}

bool random_circuit(std::string& detail) {
  ExperimentConfig c;
  c.target = RQCParams{4, 8, 7};
  c.n = 4;
  c.d = 5;
  c.N = 8;
  c.trials = 100;
  c.master_seed = 1;
  validate_config(c);
  const auto result = run(c);
  detail = "rqc n=4 depth 8, ansatz (4,5,8) max " + fmt("%.5f", result.stats.max) + " >= 0.99";
  return result.stats.max >= 0.99;
}

bool overlap_oracle(std::string& detail) {
  std::mt19937_64 gen(2024);
  double worst = 0.0;
  for (int rep = 0; rep < 500; ++rep) {
    const int n = 1 + rep % 4;
    const auto psi = testing::random_state(n, gen);
    const auto phi = testing::random_state(n, gen);
    const Complex c = inner_product(psi, phi);
    const auto est = generalized_overlap(psi, phi);
    worst = std::max({worst, std::abs(est.c_re - c.real()),
                      std::abs(est.c_im_abs - std::abs(c.imag()))});
  }
  detail = "500 pairs, worst error " + fmt("%.2e", worst) + " <= 1e-10";
  return worst <= 1e-10;
}

bool gradients(std::string& detail) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> n_dist(1, 3), d_dist(0, 2), count_dist(1, 4);
  std::uniform_real_distribution<double> angle(0.0, 2 * M_PI);
  double worst_fd = 0.0, worst_shift = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int n = n_dist(gen), d = d_dist(gen), count = count_dist(gen);
    std::vector<Gate> gates;
    for (int k = 0; k < 20; ++k) gates.push_back(testing::random_gate(n, gen));
    const auto target = circuit_to_unitary(gates, n);
    const Ansatz a = build_ansatz(n, d);
    const auto ds = make_dataset(n, count, target, gen(), DatasetRole::kTraining);
    std::vector<double> theta(a.num_params());
    for (auto& t : theta) t = angle(gen);

    const auto exact = gradient_exact(a, theta, ds);
    const auto shift = gradient_parameter_shift(a, theta, ds);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      auto probe = theta;
      probe[k] = theta[k] + 1e-5;
      const double up = loss(a, probe, ds).value;
      probe[k] = theta[k] - 1e-5;
      const double down = loss(a, probe, ds).value;
      worst_fd = std::max(worst_fd, std::abs(exact[k] - (up - down) / 2e-5));
      worst_shift = std::max(worst_shift, std::abs(exact[k] - shift[k]));
    }
  }
  detail = "finite-difference " + fmt("%.2e", worst_fd) + " <= 1e-5, parameter-shift " +
           fmt("%.2e", worst_shift) + " <= 1e-8";
  return worst_fd <= 1e-5 && worst_shift <= 1e-8;
}

bool structure(std::string& detail) {
  bool count_ok = true;
  for (int n = 1; n <= 6; ++n) {
    for (int d = 0; d <= 8; ++d) {
      for (auto pattern : {EntanglerPattern::kLadder, EntanglerPattern::kBrick}) {
        const Ansatz a = build_ansatz(n, d, pattern);
        int rotations = 0;
        for (const Gate& g : a.layout()) rotations += g.param >= 0;
        count_ok = count_ok && a.num_params() == 3 * n * (d + 1) &&
                   rotations == a.num_params();
      }
    }
  }

  double worst_unitary = 0.0, worst_commutator = 0.0;
  for (int n = 2; n <= 6; ++n) {
    for (double dt : {0.0, 0.01, 0.15, 1.0}) {
      const XXZParams p{n, 1.0, 1.0, 0.1, dt};
      worst_unitary = std::max(worst_unitary, make_xxz_target(p).unitary.unitarity_error());
    }
    for (double delta : {0.5, 1.0, 1.5}) {
      const Matrix h = build_xxz_hamiltonian({n, 1.0, delta, 0.1, 0.01});
      Matrix sz = Matrix::Zero(h.rows(), h.cols());
      for (Eigen::Index i = 0; i < h.rows(); ++i) {
        sz(i, i) = n - 2.0 * std::popcount(static_cast<std::uint64_t>(i));
      }
      worst_commutator = std::max(worst_commutator, (h * sz - sz * h).norm());
    }
    for (std::uint64_t seed : {1u, 7u, 42u}) {
      const auto t = make_rqc_target({n, 8, seed});
      worst_unitary = std::max(worst_unitary, t.unitary.unitarity_error());
    }
  }
  detail = std::string("parameter count grid ") + (count_ok ? "ok" : "MISMATCH") +
           ", unitarity " + fmt("%.2e", worst_unitary) + " <= 1e-10, [H, Sz] " +
           fmt("%.2e", worst_commutator) + " <= 1e-12";
  return count_ok && worst_unitary <= 1e-10 && worst_commutator <= 1e-12;
}

bool correlation(std::string& detail) {
  // One re-run with a fresh master seed is allowed.
  for (std::uint64_t seed : {1u, 2u}) {
    const auto result = run(xxz_config(3, 3, 5, 30, seed));
    const double r = result.accuracy_similarity_correlation;
    detail += "seed " + std::to_string(seed) + ": pearson " + fmt("%.3f", r) + "; ";
    if (r >= 0.5) return true;
  }
  return false;
}

bool dt_trend(std::string& detail) {
  const double small = run(xxz_config(4, 4, 10, 30, 1, 0.01)).stats.max;
  const double large = run(xxz_config(4, 4, 10, 30, 1, 0.15)).stats.max;
  detail = "(4,4,10) max at dt=0.01 " + fmt("%.4f", small) + " >= at dt=0.15 " +
           fmt("%.4f", large);
  return small >= large;
}

bool shot_noise(std::string& detail) {
  std::mt19937_64 gen(5);
  Rng rng(derive_seed(5, StreamPurpose::kShots, 0));
  int within = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rep % 4;
    const auto a = testing::random_state(n, gen);
    const auto b = testing::random_state(n, gen);
    const double exact = fidelity(a, b);
    const double sampled = fidelity(a, b, Shots(100000), &rng);
    within += std::abs(sampled - exact) <= 0.01;
  }
  detail = std::to_string(within) + "/100 within 0.01 at 1e5 shots (> 95 required)";
  return within > 95;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool determinism(std::string& detail) {
  auto c = xxz_config(3, 2, 4, 6, 314);
  c.optimizer.max_epochs = 300;
  const fs::path dir = fs::temp_directory_path() / "vqpt_acceptance_determinism";
  c.output_dir = dir.string();
  std::vector<nlohmann::json> docs;
  for (int threads : {1, 3}) {
    fs::remove_all(dir);
    cmd_learn(c, {.threads = threads});
    auto j = nlohmann::json::parse(slurp(dir / "result.json"));
    j.erase("generated_at");
    docs.push_back(std::move(j));
  }
  fs::remove_all(dir);
  const bool same = docs[0] == docs[1];
  detail = same ? "result.json identical apart from generated_at (1 vs 3 threads)"
                : "result.json differs";
  return same;
}

}  // namespace

int main() {
  run_check("AC1 xxz best-of-trials similarity", table_rows);
  run_check("AC2 random circuit target", random_circuit);
  run_check("AC3 generalized overlap oracle", overlap_oracle);
  run_check("AC4 gradient correctness", gradients);
  run_check("AC5 structural invariants", structure);
  run_check("AC6 accuracy/similarity correlation", correlation);
  run_check("AC7 dt trend", dt_trend);
  run_check("AC8 shot-noise sanity", shot_noise);
  run_check("AC9 determinism", determinism);
  std::printf("%d criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
