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

#include "vqpt/experiment.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "vqpt/rng.hpp"

#ifndef VQPT_VERSION
#define VQPT_VERSION "unknown"
#endif

namespace vqpt {

using nlohmann::json;

namespace {

// --- config parsing --------------------------------------------------------

int line_at(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

// Best-effort location of an object key path: each component is searched for
// as a quoted key after the previous one.
int line_of_path(std::string_view text, const std::vector<std::string>& path) {
  std::size_t pos = 0;
  bool found_any = false;
  for (const auto& key : path) {
    const std::string quoted = "\"" + key + "\"";
    std::size_t at = text.find(quoted, pos);
    while (at != std::string_view::npos) {
      std::size_t after = at + quoted.size();
      while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
      if (after < text.size() && text[after] == ':') break;
      at = text.find(quoted, at + 1);
    }
    if (at == std::string_view::npos) break;
    pos = at;
    found_any = true;
  }
  return found_any ? line_at(text, pos) : 1;
}

std::string join_path(const std::vector<std::string>& path) {
  std::string out;
  for (const auto& p : path) {
    if (!out.empty()) out += '.';
    out += p;
  }
  return out;
}

class ConfigReader {
 public:
  ConfigReader(std::string_view text, std::string_view source)
      : text_(text), source_(source) {}

  [[noreturn]] void fail(const std::vector<std::string>& path,
                         const std::string& message) const {
    const std::string where = path.empty() ? "" : join_path(path) + ": ";
    throw ConfigError(std::string(source_), line_of_path(text_, path), where + message);
  }

  void reject_unknown(const json& obj, const std::vector<std::string>& path,
                      const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.contains(key)) {
        auto p = path;
        p.push_back(key);
        fail(p, "unknown field");
      }
    }
  }

  const json& object(const json& parent, const std::vector<std::string>& path,
                     const std::string& key) const {
    auto p = path;
    p.push_back(key);
    if (!parent.contains(key)) fail(path, "missing required field '" + key + "'");
    const json& v = parent.at(key);
    if (!v.is_object()) fail(p, "must be an object");
    return v;
  }

  template <class T>
  T number(const json& parent, const std::vector<std::string>& path,
           const std::string& key, std::optional<T> fallback = std::nullopt) const {
    auto p = path;
    p.push_back(key);
    if (!parent.contains(key)) {
      if (fallback) return *fallback;
      fail(path, "missing required field '" + key + "'");
    }
    const json& v = parent.at(key);
    if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) fail(p, "must be a number");
    } else if constexpr (std::is_unsigned_v<T>) {
      if (!v.is_number_unsigned()) fail(p, "must be a non-negative integer");
    } else {
      if (!v.is_number_integer()) fail(p, "must be an integer");
    }
    return v.get<T>();
  }

  std::string string(const json& parent, const std::vector<std::string>& path,
                     const std::string& key, const std::string& fallback) const {
    auto p = path;
    p.push_back(key);
    if (!parent.contains(key)) return fallback;
    const json& v = parent.at(key);
    if (!v.is_string()) fail(p, "must be a string");
    return v.get<std::string>();
  }

  template <class Fn>
  auto guarded(const std::vector<std::string>& path, Fn&& fn) const {
    try {
      return fn();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }

 private:
  std::string_view text_;
  std::string_view source_;
};

OptimizerConfig parse_optimizer(const ConfigReader& r, const json& j) {
  const std::vector<std::string> path{"optimizer"};
  r.reject_unknown(j, path,
                   {"method", "learning_rate", "max_epochs", "loss_threshold",
                    "plateau_patience", "gradient_mode", "overlap_mode"});
  OptimizerConfig o;
  o.method = r.guarded({"optimizer", "method"}, [&] {
    return parse_optimizer_method(r.string(j, path, "method", "adam"));
  });
  o.learning_rate = r.number<double>(j, path, "learning_rate", o.learning_rate);
  o.max_epochs = r.number<int>(j, path, "max_epochs", o.max_epochs);
  o.loss_threshold = r.number<double>(j, path, "loss_threshold", o.loss_threshold);
  o.plateau_patience = r.number<int>(j, path, "plateau_patience", o.plateau_patience);
  o.gradient_mode = r.guarded({"optimizer", "gradient_mode"}, [&] {
    return parse_gradient_mode(r.string(j, path, "gradient_mode", "exact"));
  });
  o.overlap_mode = r.guarded({"optimizer", "overlap_mode"}, [&] {
    return parse_overlap_mode(r.string(j, path, "overlap_mode", "direct"));
  });
  if (!(o.learning_rate > 0)) r.fail({"optimizer", "learning_rate"}, "must be > 0");
  if (o.max_epochs < 1) r.fail({"optimizer", "max_epochs"}, "must be >= 1");
  if (!(o.loss_threshold >= 0)) r.fail({"optimizer", "loss_threshold"}, "must be >= 0");
  if (o.plateau_patience < 0) r.fail({"optimizer", "plateau_patience"}, "must be >= 0");
  return o;
}

TargetProvenance parse_target(const ConfigReader& r, const json& j, int n) {
  const std::vector<std::string> path{"target"};
  const std::string kind = r.string(j, path, "kind", "");
  if (kind == "xxz") {
    r.reject_unknown(j, path, {"kind", "n", "J", "delta", "h", "dt"});
    XXZParams p;
    p.n = r.number<int>(j, path, "n", n);
    p.J = r.number<double>(j, path, "J", p.J);
    p.delta = r.number<double>(j, path, "delta", p.delta);
    p.h = r.number<double>(j, path, "h", p.h);
    p.dt = r.number<double>(j, path, "dt", p.dt);
    if (p.n != n) r.fail({"target", "n"}, "must equal the top-level n");
    if (p.dt < 0) r.fail({"target", "dt"}, "must be >= 0");
    return p;
  }
  if (kind == "rqc") {
    r.reject_unknown(j, path, {"kind", "n", "depth", "seed"});
    RQCParams p;
    p.n = r.number<int>(j, path, "n", n);
    p.depth = r.number<int>(j, path, "depth");
    p.seed = r.number<std::uint64_t>(j, path, "seed", std::uint64_t{0});
    if (p.n != n) r.fail({"target", "n"}, "must equal the top-level n");
    if (p.depth < 1) r.fail({"target", "depth"}, "must be >= 1");
    return p;
  }
  r.fail({"target", "kind"}, "must be \"xxz\" or \"rqc\"");
}

int target_qubits(const TargetProvenance& t) {
  return std::visit([](const auto& p) { return p.n; }, t);
}

// --- serialization helpers -------------------------------------------------

double number_or_nan(const json& j) {
  return j.is_null() ? std::nan("") : j.get<double>();
}

StopReason parse_stop_reason(const std::string& s) {
  for (auto r : {StopReason::kThreshold, StopReason::kPlateau,
                 StopReason::kMaxEpochs, StopReason::kFailed}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown stop reason '" + s + "'");
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

int resolve_threads(const RunOptions& options) {
  if (options.threads > 0) return options.threads;
  return threads_from_env().value_or(0);
}

ProgressCallback make_progress(const ExperimentConfig& config, const RunOptions& options) {
  if (options.log == nullptr || config.progress_interval <= 0) return {};
  std::ostream* log = options.log;
  const int every = config.progress_interval;
  return [log, every](int trial, int epoch, double loss) {
    if (epoch % every == 0) {
      *log << "trial " << trial << " epoch " << epoch << " loss " << loss << '\n';
    }
  };
}

}  // namespace

ConfigError::ConfigError(std::string source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      line_(line) {}

ExperimentConfig parse_config(std::string_view text, std::string_view source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(source), line_at(text, e.byte == 0 ? 0 : e.byte - 1),
                      std::string("malformed JSON: ") + e.what());
  }
  ConfigReader r(text, source);
  if (!root.is_object()) r.fail({}, "config must be a JSON object");
  r.reject_unknown(root, {},
                   {"target", "n", "d", "N", "trials", "master_seed", "optimizer",
                    "shots", "validation_size", "pattern", "cz_per_state",
                    "progress_interval", "output_dir"});

  ExperimentConfig c;
  c.n = r.number<int>(root, {}, "n");
  c.d = r.number<int>(root, {}, "d");
  c.N = r.number<int>(root, {}, "N");
  if (c.n < 1) r.fail({"n"}, "must be >= 1");
  if (c.n > kMaxQubits) r.fail({"n"}, CapacityError(c.n).what());
  if (c.d < 0) r.fail({"d"}, "must be >= 0");
  if (c.N < 1) r.fail({"N"}, "must be >= 1");
  c.trials = r.number<int>(root, {}, "trials", c.trials);
  if (c.trials < 1) r.fail({"trials"}, "must be >= 1");
  c.master_seed = r.number<std::uint64_t>(root, {}, "master_seed", c.master_seed);
  c.validation_size = r.number<int>(root, {}, "validation_size", 0);
  if (root.contains("validation_size") && c.validation_size < 1) {
    r.fail({"validation_size"}, "must be >= 1");
  }
  c.cz_per_state = r.number<int>(root, {}, "cz_per_state", kCzPerQubit);
  c.progress_interval = r.number<int>(root, {}, "progress_interval", 0);
  c.output_dir = r.string(root, {}, "output_dir", c.output_dir);
  c.pattern = r.guarded({"pattern"}, [&] {
    return parse_pattern(r.string(root, {}, "pattern", "ladder"));
  });

  if (root.contains("shots")) {
    const json& s = root.at("shots");
    if (s.is_string() && s.get<std::string>() == "exact") {
      c.shots = Shots::exact();
    } else if (s.is_number_integer() && s.get<std::int64_t>() >= 1) {
      c.shots = Shots(s.get<std::int64_t>());
    } else {
      r.fail({"shots"}, "must be \"exact\" or an integer >= 1");
    }
  }
  if (root.contains("optimizer")) {
    c.optimizer = parse_optimizer(r, r.object(root, {}, "optimizer"));
  }
  c.target = parse_target(r, r.object(root, {}, "target"), c.n);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.string());
}

void validate_config(const ExperimentConfig& c) {
  check_qubit_count(c.n);
  if (target_qubits(c.target) != c.n) {
    throw std::invalid_argument("target n must equal ansatz n");
  }
  if (c.n < 2) throw std::invalid_argument("targets need n >= 2");
  if (c.d < 0 || c.N < 1 || c.trials < 1 || c.validation_size < 0) {
    throw std::invalid_argument("counts must be >= 1 (depth >= 0)");
  }
  c.optimizer.validate();
}

json config_to_json(const ExperimentConfig& c) {
  json target;
  to_json(target, c.target);
  json shots = c.shots.is_exact() ? json("exact") : json(c.shots.count());
  json j = {
      {"target", target},
      {"n", c.n},
      {"d", c.d},
      {"N", c.N},
      {"trials", c.trials},
      {"master_seed", c.master_seed},
      {"shots", shots},
      {"pattern", std::string(to_string(c.pattern))},
      {"progress_interval", c.progress_interval},
      {"output_dir", c.output_dir},
      {"optimizer",
       {{"method", std::string(to_string(c.optimizer.method))},
        {"learning_rate", c.optimizer.learning_rate},
        {"max_epochs", c.optimizer.max_epochs},
        {"loss_threshold", c.optimizer.loss_threshold},
        {"plateau_patience", c.optimizer.plateau_patience},
        {"gradient_mode", std::string(to_string(c.optimizer.gradient_mode))},
        {"overlap_mode", std::string(to_string(c.optimizer.overlap_mode))}}},
  };
  // Defaults that track other fields are left implicit.
  if (c.validation_size > 0) j["validation_size"] = c.validation_size;
  if (c.cz_per_state >= 0) j["cz_per_state"] = c.cz_per_state;
  return j;
}

void apply_overrides(ExperimentConfig& c, const ConfigOverrides& o) {
  if (o.qubits) {
    c.n = *o.qubits;
    std::visit([&](auto& p) { p.n = c.n; }, c.target);
  }
  if (o.depth) c.d = *o.depth;
  if (o.num_states) c.N = *o.num_states;
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.master_seed = *o.seed;
  if (o.dt) {
    auto* xxz = std::get_if<XXZParams>(&c.target);
    if (xxz == nullptr) throw std::invalid_argument("--dt needs an xxz target");
    xxz->dt = *o.dt;
  }
  if (o.output) c.output_dir = *o.output;
  validate_config(c);
}

std::optional<int> threads_from_env() {
  const char* raw = std::getenv("VQPT_THREADS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v < 1) return std::nullopt;
  return static_cast<int>(v);
}

TargetProcess build_target(const ExperimentConfig& config) {
  if (const auto* x = std::get_if<XXZParams>(&config.target)) return make_xxz_target(*x);
  return make_rqc_target(std::get<RQCParams>(config.target));
}

ExperimentSetup prepare_experiment(const ExperimentConfig& config,
                                   const TargetProcess& target) {
  validate_config(config);
  return ExperimentSetup{
      .ansatz = build_ansatz(config.n, config.d, config.pattern),
      .training = make_dataset(
          config.n, config.N, target.unitary,
          derive_seed(config.master_seed, StreamPurpose::kTrainingSet),
          DatasetRole::kTraining, config.cz_per_state),
      .validation = make_dataset(
          config.n, config.effective_validation_size(), target.unitary,
          derive_seed(config.master_seed, StreamPurpose::kValidationSet),
          DatasetRole::kValidation, config.cz_per_state),
      .target = target.unitary,
      .optimizer = config.optimizer,
      .trials = config.trials,
      .master_seed = config.master_seed,
      .shots = config.shots,
      .threads = 0,
      .progress = {},
  };
}

json trial_to_json(const TrialRecord& t) {
  json j = {{"trial", t.trial_index},
            {"seed", t.trial_seed},
            {"failed", t.failed},
            {"stop_reason", std::string(to_string(t.stop_reason))},
            {"epochs_run", t.epochs_run},
            {"final_loss", t.final_loss},
            {"similarity", t.similarity},
            {"phase_aligned_similarity", t.phase_aligned_similarity},
            {"accuracy", t.accuracy},
            {"theta_final", t.theta_final},
            {"loss_history", t.loss_history}};
  if (t.failed) j["failure"] = t.failure;
  return j;
}

TrialRecord trial_from_json(const json& j) {
  TrialRecord t;
  t.trial_index = j.at("trial").get<int>();
  t.trial_seed = j.at("seed").get<std::uint64_t>();
  t.failed = j.at("failed").get<bool>();
  t.stop_reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
  t.epochs_run = j.at("epochs_run").get<int>();
  t.final_loss = number_or_nan(j.at("final_loss"));
  t.similarity = j.at("similarity").get<double>();
  t.phase_aligned_similarity = j.at("phase_aligned_similarity").get<double>();
  t.accuracy = j.at("accuracy").get<double>();
  t.theta_final = j.at("theta_final").get<std::vector<double>>();
  t.loss_history = j.at("loss_history").get<std::vector<double>>();
  if (j.contains("failure")) t.failure = j.at("failure").get<std::string>();
  return t;
}

json result_to_json(const ExperimentConfig& config, const TargetProcess& target,
                    const ExperimentSetup& setup, const ExperimentResult& result,
                    const std::string& timestamp) {
  json trials = json::array();
  for (const auto& t : result.trials) trials.push_back(trial_to_json(t));
  json provenance;
  to_json(provenance, target.provenance);
  json ansatz;
  to_json(ansatz, setup.ansatz);
  ansatz["num_params"] = setup.ansatz.num_params();
  const auto& best = result.best();
  return {
      {"schema_version", kResultSchemaVersion},
      {"code_version", VQPT_VERSION},
      {"generated_at", timestamp},
      {"config", config_to_json(config)},
      {"target", provenance},
      {"ansatz", ansatz},
      {"datasets",
       {{"training", dataset_to_json(setup.training)},
        {"validation", dataset_to_json(setup.validation)}}},
      {"trials", trials},
      {"best_trial", result.best_index},
      {"summary",
       {{"max_similarity", result.stats.max},
        {"mean_similarity", result.stats.mean},
        {"std_similarity", result.stats.std},
        {"completed", result.stats.completed},
        {"failed", result.stats.failed},
        {"best_accuracy", best.accuracy},
        {"best_similarity", best.similarity},
        {"accuracy_similarity_correlation", result.accuracy_similarity_correlation}}},
  };
}

ExperimentResult result_from_json(const json& j) {
  const int version = j.at("schema_version").get<int>();
  if (version != kResultSchemaVersion) {
    throw std::invalid_argument("unsupported result schema version " +
                                std::to_string(version));
  }
  ExperimentResult r;
  for (const auto& t : j.at("trials")) r.trials.push_back(trial_from_json(t));
  r.best_index = j.at("best_trial").get<std::size_t>();
  const json& s = j.at("summary");
  r.stats.max = s.at("max_similarity").get<double>();
  r.stats.mean = s.at("mean_similarity").get<double>();
  r.stats.std = s.at("std_similarity").get<double>();
  r.stats.completed = s.at("completed").get<int>();
  r.stats.failed = s.at("failed").get<int>();
  r.accuracy_similarity_correlation =
      s.at("accuracy_similarity_correlation").get<double>();
  return r;
}

LearnOutcome cmd_learn(const ExperimentConfig& config, const RunOptions& options) {
  const TargetProcess target = build_target(config);
  ExperimentSetup setup = prepare_experiment(config, target);
  setup.threads = resolve_threads(options);
  setup.progress = make_progress(config, options);
  ExperimentResult result = run_experiment(setup);

  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  const std::string stamp = options.timestamp.empty() ? utc_now() : options.timestamp;
  const json doc = result_to_json(config, target, setup, result, stamp);
  write_text(dir / "result.json", doc.dump(2) + "\n");

  std::ostringstream csv;
  csv << "epoch,trial,loss\n";
  for (const auto& t : result.trials) {
    for (std::size_t e = 0; e < t.loss_history.size(); ++e) {
      csv << e << ',' << t.trial_index << ',' << format_double(t.loss_history[e]) << '\n';
    }
  }
  write_text(dir / "loss_curves.csv", csv.str());

  const TrialRecord& best = result.best();
  SavedParameters saved{config.n, config.d, config.pattern, best.theta_final,
                        best.accuracy, best.similarity};
  write_text(dir / "theta_best.json", saved_parameters_to_json(saved).dump(2) + "\n");
  return {std::move(result), dir / "result.json"};
}

std::vector<DtSweepRow> cmd_sweep_dt(const ExperimentConfig& config,
                                     std::span<const double> dts,
                                     const RunOptions& options) {
  if (!std::holds_alternative<XXZParams>(config.target)) {
    throw std::invalid_argument("sweep-dt needs an xxz target");
  }
  if (dts.empty()) throw std::invalid_argument("sweep-dt needs at least one dt");
  std::vector<DtSweepRow> rows;
  for (double dt : dts) {
    if (dt < 0) throw std::invalid_argument("dt must be >= 0");
    ExperimentConfig c = config;
    std::get<XXZParams>(c.target).dt = dt;
    const TargetProcess target = build_target(c);
    ExperimentSetup setup = prepare_experiment(c, target);
    setup.threads = resolve_threads(options);
    setup.progress = make_progress(c, options);
    const ExperimentResult result = run_experiment(setup);
    rows.push_back({dt, result.stats.max, result.stats.mean});
    if (options.log != nullptr) {
      *options.log << "dt " << dt << " max_similarity " << result.stats.max
                   << " mean_similarity " << result.stats.mean << '\n';
    }
  }
  std::ostringstream csv;
  csv << "dt,max_similarity,mean_similarity\n";
  for (const auto& row : rows) {
    csv << format_double(row.dt) << ',' << format_double(row.max_similarity) << ','
        << format_double(row.mean_similarity) << '\n';
  }
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  write_text(dir / "dt_sweep.csv", csv.str());
  return rows;
}

json saved_parameters_to_json(const SavedParameters& s) {
  json j = {{"schema_version", kResultSchemaVersion},
            {"n", s.n},
            {"d", s.d},
            {"pattern", std::string(to_string(s.pattern))},
            {"theta", s.theta}};
  if (s.recorded_accuracy) j["accuracy"] = *s.recorded_accuracy;
  if (s.recorded_similarity) j["similarity"] = *s.recorded_similarity;
  return j;
}

SavedParameters load_saved_parameters(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open parameter file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path.string() + ": malformed JSON: " + e.what());
  }
  SavedParameters s;
  try {
    s.n = j.at("n").get<int>();
    s.d = j.at("d").get<int>();
    s.pattern = parse_pattern(j.value("pattern", std::string("ladder")));
    s.theta = j.at("theta").get<std::vector<double>>();
    if (j.contains("accuracy")) s.recorded_accuracy = j.at("accuracy").get<double>();
    if (j.contains("similarity")) s.recorded_similarity = j.at("similarity").get<double>();
  } catch (const json::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
  return s;
}

json ValidationReport::to_json() const {
  json j = {{"accuracy", accuracy},
            {"similarity", similarity},
            {"phase_aligned_similarity", phase_aligned_similarity},
            {"validation_seed", validation_seed}};
  if (recorded_accuracy) j["recorded_accuracy"] = *recorded_accuracy;
  return j;
}

ValidationReport cmd_validate(const std::filesystem::path& theta_path,
                              const ExperimentConfig& config,
                              std::uint64_t fresh_index) {
  validate_config(config);
  const SavedParameters saved = load_saved_parameters(theta_path);
  const Ansatz ansatz = build_ansatz(config.n, config.d, config.pattern);
  if (saved.n != config.n || saved.d != config.d || saved.pattern != config.pattern ||
      saved.theta.size() != static_cast<std::size_t>(ansatz.num_params())) {
    throw std::invalid_argument(
        "saved parameters (n=" + std::to_string(saved.n) + ", d=" +
        std::to_string(saved.d) + ", " + std::to_string(saved.theta.size()) +
        " values) do not match the config ansatz (n=" + std::to_string(config.n) +
        ", d=" + std::to_string(config.d) + ", " +
        std::to_string(ansatz.num_params()) + " values)");
  }
  const TargetProcess target = build_target(config);
  ValidationReport report;
  report.validation_seed =
      derive_seed(config.master_seed, StreamPurpose::kFreshValidationSet, fresh_index);
  const Dataset fresh =
      make_dataset(config.n, config.effective_validation_size(), target.unitary,
                   report.validation_seed, DatasetRole::kValidation,
                   config.cz_per_state);
  Rng shot_rng(derive_seed(report.validation_seed, StreamPurpose::kShots));
  report.accuracy = accuracy(ansatz, saved.theta, fresh, config.shots, &shot_rng);
  const DenseUnitary circuit = circuit_to_unitary(ansatz.bind(saved.theta), config.n);
  report.similarity = similarity(circuit, target.unitary);
  report.phase_aligned_similarity = phase_aligned_similarity(circuit, target.unitary);
  report.recorded_accuracy = saved.recorded_accuracy;
  return report;
}

}  // namespace vqpt
