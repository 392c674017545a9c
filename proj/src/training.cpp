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

#include "vqpt/training.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "vqpt/rng.hpp"

namespace vqpt {

namespace {

constexpr double kShift = std::numbers::pi / 2;
constexpr double kPlateauTolerance = 1e-9;

void require_role(const Dataset& ds, DatasetRole role, std::string_view op) {
  if (ds.role != role) {
    throw std::invalid_argument(std::string(op) + " needs a " +
                                std::string(to_string(role)) + " dataset");
  }
  if (ds.size() == 0) throw std::invalid_argument(std::string(op) + ": empty dataset");
}

void require_size(const Ansatz& ansatz, const Dataset& ds) {
  if (ds.inputs.front().num_qubits() != ansatz.num_qubits()) {
    throw DimensionError("dataset and ansatz sizes differ");
  }
}

void apply_gate_adjoint(StateVector& state, const Gate& gate) {
  switch (gate.kind) {
    case GateKind::Ry:
    case GateKind::Rz: {
      Gate inverse = gate;
      inverse.angle = -gate.angle;
      apply_gate(state, inverse);
      break;
    }
    case GateKind::CZ:
      apply_gate(state, gate);
      break;
    default:
      apply_single_qubit(state, gate.qubits[0],
                         gate_matrix(gate.kind).adjoint());
  }
}

// <bra| P_q |ket> with P = Y for Ry gates and Z for Rz gates.
Complex generator_element(const StateVector& bra, const StateVector& ket,
                          const Gate& gate) {
  const std::size_t stride = std::size_t{1} << gate.qubits[0];
  const auto l = bra.amplitudes();
  const auto r = ket.amplitudes();
  Complex acc{};
  for (std::size_t block = 0; block < l.size(); block += 2 * stride) {
    for (std::size_t i0 = block; i0 < block + stride; ++i0) {
      const std::size_t i1 = i0 + stride;
      if (gate.kind == GateKind::Rz) {
        acc += std::conj(l[i0]) * r[i0] - std::conj(l[i1]) * r[i1];
      } else {
        // Y|0> = i|1>, Y|1> = -i|0>
        acc += std::conj(l[i0]) * Complex(0, -1) * r[i1] +
               std::conj(l[i1]) * Complex(0, 1) * r[i0];
      }
    }
  }
  return acc;
}

// Joint-measurement value b = 2 p0 f of the post-selected superposition of
// `branch0` and `branch1`, compared against `reference`.
double superposition_b(const StateVector& reference, const StateVector& branch0,
                       const StateVector& branch1) {
  try {
    const Superposition sup = superposition_state(branch0, branch1);
    return 2.0 * sup.p0 * fidelity(reference, sup.xi);
  } catch (const DegenerateSuperposition&) {
    return 0.0;
  }
}

template <class T>
bool all_finite(const T& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

class Optimizer {
 public:
  Optimizer(OptimizerMethod method, double lr, std::size_t size)
      : method_(method), lr_(lr), m_(size, 0.0), v_(size, 0.0) {}

  void step(std::vector<double>& theta, const std::vector<double>& grad) {
    if (method_ == OptimizerMethod::kSgd) {
      for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= lr_ * grad[i];
      return;
    }
    ++t_;
    const double c1 = 1.0 - std::pow(kBeta1, t_);
    const double c2 = 1.0 - std::pow(kBeta2, t_);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      m_[i] = kBeta1 * m_[i] + (1.0 - kBeta1) * grad[i];
      v_[i] = kBeta2 * v_[i] + (1.0 - kBeta2) * grad[i] * grad[i];
      theta[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + kEpsilon);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  OptimizerMethod method_;
  double lr_;
  std::vector<double> m_, v_;
  int t_ = 0;
};

}  // namespace

std::string_view to_string(OverlapMode mode) {
  return mode == OverlapMode::kDirect ? "direct" : "swaptest";
}

std::string_view to_string(GradientMode mode) {
  return mode == GradientMode::kExact ? "exact" : "parameter_shift";
}

std::string_view to_string(OptimizerMethod method) {
  return method == OptimizerMethod::kAdam ? "adam" : "sgd";
}

OverlapMode parse_overlap_mode(std::string_view name) {
  if (name == "direct") return OverlapMode::kDirect;
  if (name == "swaptest") return OverlapMode::kSwapTest;
  throw std::invalid_argument("unknown overlap mode '" + std::string(name) + "'");
}

GradientMode parse_gradient_mode(std::string_view name) {
  if (name == "exact") return GradientMode::kExact;
  if (name == "parameter_shift") return GradientMode::kParameterShift;
  throw std::invalid_argument("unknown gradient mode '" + std::string(name) + "'");
}

OptimizerMethod parse_optimizer_method(std::string_view name) {
  if (name == "adam") return OptimizerMethod::kAdam;
  if (name == "sgd") return OptimizerMethod::kSgd;
  throw std::invalid_argument("unknown optimizer '" + std::string(name) + "'");
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kThreshold: return "threshold";
    case StopReason::kPlateau: return "plateau";
    case StopReason::kMaxEpochs: return "max_epochs";
    case StopReason::kFailed: return "failed";
  }
  return "?";
}

void OptimizerConfig::validate() const {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be > 0");
  if (max_epochs < 1) throw std::invalid_argument("max_epochs must be >= 1");
  if (!(loss_threshold >= 0.0)) throw std::invalid_argument("loss_threshold must be >= 0");
  if (plateau_patience < 0) throw std::invalid_argument("plateau_patience must be >= 0");
}

LossReport loss(const Ansatz& ansatz, std::span<const double> theta,
                const Dataset& dataset, OverlapMode mode, Shots shots,
                Rng* rng) {
  require_role(dataset, DatasetRole::kTraining, "loss");
  require_size(ansatz, dataset);
  ansatz.check_params(theta);
  const auto gates = ansatz.bind(theta);

  LossReport report;
  report.distances.reserve(dataset.size());
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    StateVector out = dataset.inputs[j];
    apply_circuit(out, gates);
    double overlap;
    if (mode == OverlapMode::kDirect) {
      overlap = inner_product(dataset.ideal_outputs[j], out).real();
    } else {
      overlap = generalized_overlap(dataset.ideal_outputs[j], out, shots, rng).c_re;
    }
    report.distances.push_back(std::clamp(2.0 - 2.0 * overlap, 0.0, 4.0));
  }
  double sum = 0.0;
  for (double d : report.distances) sum += d;
  report.value = sum / static_cast<double>(report.distances.size());
  return report;
}

LossReport loss_and_gradient(const Ansatz& ansatz, std::span<const double> theta,
                             const Dataset& dataset, std::vector<double>& grad) {
  require_role(dataset, DatasetRole::kTraining, "gradient");
  require_size(ansatz, dataset);
  const auto gates = ansatz.bind(theta);
  const double scale = 2.0 / static_cast<double>(dataset.size());
  grad.assign(ansatz.num_params(), 0.0);

  LossReport report;
  double sum = 0.0;
  for (std::size_t j = 0; j < dataset.size(); ++j) {
    StateVector ket = dataset.inputs[j];
    apply_circuit(ket, gates);
    StateVector bra = dataset.ideal_outputs[j];
    const double d = 2.0 - 2.0 * inner_product(bra, ket).real();
    report.distances.push_back(d);
    sum += d;

    // Walking backwards, `ket` is the state just after gate k and `bra` is the
    // target pulled back through every gate after k. For R(t) = exp(-i t P/2),
    // dRe<bra|ket>/dt = Re(-i/2 <bra|P|ket>).
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      if (it->param >= 0) {
        const Complex element = generator_element(bra, ket, *it);
        grad[it->param] += -scale * (Complex(0, -0.5) * element).real();
      }
      apply_gate_adjoint(ket, *it);
      apply_gate_adjoint(bra, *it);
    }
  }
  report.value = sum / static_cast<double>(dataset.size());
  return report;
}

std::vector<double> gradient_exact(const Ansatz& ansatz,
                                   std::span<const double> theta,
                                   const Dataset& dataset) {
  std::vector<double> grad;
  loss_and_gradient(ansatz, theta, dataset, grad);
  return grad;
}

namespace {

struct ShiftedOutputs {
  std::vector<Gate> plus;
  std::vector<Gate> minus;
};

template <class Visit>
void for_each_shift(const Ansatz& ansatz, std::span<const double> theta,
                    Visit&& visit) {
  const auto gates = ansatz.bind(theta);
  for (std::size_t g = 0; g < gates.size(); ++g) {
    if (gates[g].param < 0) continue;
    ShiftedOutputs shifted{gates, gates};
    shifted.plus[g].angle += kShift;
    shifted.minus[g].angle -= kShift;
    visit(gates[g], shifted);
  }
}

}  // namespace

std::vector<double> gradient_parameter_shift(const Ansatz& ansatz,
                                             std::span<const double> theta,
                                             const Dataset& dataset) {
  require_role(dataset, DatasetRole::kTraining, "gradient");
  require_size(ansatz, dataset);
  ansatz.check_params(theta);
  const double scale = 2.0 / static_cast<double>(dataset.size());
  std::vector<double> grad(ansatz.num_params(), 0.0);

  for_each_shift(ansatz, theta, [&](const Gate& gate, const ShiftedOutputs& s) {
    const int q = gate.qubits[0];
    for (std::size_t j = 0; j < dataset.size(); ++j) {
      const StateVector& ideal = dataset.ideal_outputs[j];
      StateVector out_plus = dataset.inputs[j];
      apply_circuit(out_plus, s.plus);
      StateVector out_minus = dataset.inputs[j];
      apply_circuit(out_minus, s.minus);

      const double da = 0.5 * (fidelity(ideal, out_plus) - fidelity(ideal, out_minus));

      // The reference branch of the superposition sees only the rotation
      // pieces of the split controlled gate.
      const StateVector ref_plus = applied(ideal, Gate{gate.kind, {q, -1}, kShift});
      const StateVector ref_minus = applied(ideal, Gate{gate.kind, {q, -1}, -kShift});
      const double free_piece = 0.5 * (superposition_b(ideal, ref_plus, out_plus) -
                                       superposition_b(ideal, ref_minus, out_minus));
      const double correlated_piece =
          0.5 * (superposition_b(ideal, ref_minus, out_plus) -
                 superposition_b(ideal, ref_plus, out_minus));
      const double db = 0.5 * (free_piece + correlated_piece);

      const double dc_re = db - 0.5 * da;
      grad[gate.param] += -scale * dc_re;
    }
  });
  return grad;
}

std::vector<double> fidelity_gradient_parameter_shift(
    const Ansatz& ansatz, std::span<const double> theta, const Dataset& dataset) {
  require_size(ansatz, dataset);
  ansatz.check_params(theta);
  const double scale = 1.0 / static_cast<double>(dataset.size());
  std::vector<double> grad(ansatz.num_params(), 0.0);
  for_each_shift(ansatz, theta, [&](const Gate& gate, const ShiftedOutputs& s) {
    for (std::size_t j = 0; j < dataset.size(); ++j) {
      StateVector out_plus = dataset.inputs[j];
      apply_circuit(out_plus, s.plus);
      StateVector out_minus = dataset.inputs[j];
      apply_circuit(out_minus, s.minus);
      grad[gate.param] += scale * 0.5 *
                          (fidelity(dataset.ideal_outputs[j], out_plus) -
                           fidelity(dataset.ideal_outputs[j], out_minus));
    }
  });
  return grad;
}

double similarity(const DenseUnitary& circuit, const DenseUnitary& target) {
  if (circuit.dim() != target.dim()) {
    throw DimensionError("similarity: matrix sizes differ");
  }
  return 1.0 - (circuit.matrix() - target.matrix()).norm() /
                   (2.0 * target.matrix().norm());
}

double phase_aligned_similarity(const DenseUnitary& circuit,
                                const DenseUnitary& target) {
  if (circuit.dim() != target.dim()) {
    throw DimensionError("similarity: matrix sizes differ");
  }
  // ||e^{i phi} C - U||^2 = |C|^2 + |U|^2 - 2 Re(e^{i phi} tr(U^dagger C)),
  // minimised when the phase cancels that of the trace.
  const double c2 = circuit.matrix().squaredNorm();
  const double u2 = target.matrix().squaredNorm();
  const double overlap =
      std::abs((target.matrix().adjoint() * circuit.matrix()).trace());
  const double dist = std::sqrt(std::max(0.0, c2 + u2 - 2.0 * overlap));
  return 1.0 - dist / (2.0 * std::sqrt(u2));
}

double accuracy(const Ansatz& ansatz, std::span<const double> theta,
                const Dataset& validation, Shots shots, Rng* rng) {
  require_role(validation, DatasetRole::kValidation, "accuracy");
  require_size(ansatz, validation);
  const auto gates = ansatz.bind(theta);
  double sum = 0.0;
  for (std::size_t j = 0; j < validation.size(); ++j) {
    StateVector out = validation.inputs[j];
    apply_circuit(out, gates);
    sum += std::sqrt(fidelity(validation.ideal_outputs[j], out, shots, rng));
  }
  return sum / static_cast<double>(validation.size());
}

double pearson_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("pearson_correlation: need two equal-length series");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> initial_parameters(int count, std::uint64_t trial_seed) {
  Rng rng(derive_seed(trial_seed, StreamPurpose::kInit));
  std::vector<double> theta(count);
  for (auto& t : theta) t = rng.uniform(0.0, 2 * std::numbers::pi);
  return theta;
}

TrialRecord run_trial(const OptimizerConfig& config, const TrialInputs& inputs,
                      std::uint64_t trial_seed, Shots shots, int trial_index,
                      const ProgressCallback& progress) {
  return run_trial_from(config, inputs,
                        initial_parameters(inputs.ansatz.num_params(), trial_seed),
                        trial_seed, shots, trial_index, progress);
}

TrialRecord run_trial_from(const OptimizerConfig& config,
                           const TrialInputs& inputs, std::vector<double> theta,
                           std::uint64_t trial_seed, Shots shots,
                           int trial_index, const ProgressCallback& progress) {
  config.validate();
  inputs.ansatz.check_params(theta);
  if (inputs.target.num_qubits() != inputs.ansatz.num_qubits()) {
    throw DimensionError("target and ansatz sizes differ");
  }

  TrialRecord rec;
  rec.trial_index = trial_index;
  rec.trial_seed = trial_seed;
  Rng shot_rng(derive_seed(trial_seed, StreamPurpose::kShots));
  Optimizer optimizer(config.method, config.learning_rate, theta.size());

  double best = std::numeric_limits<double>::infinity();
  double plateau_ref = best;
  int since_improvement = 0;
  std::vector<double> best_theta = theta;
  std::vector<double> grad;
  rec.stop_reason = StopReason::kMaxEpochs;

  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    double value;
    if (config.gradient_mode == GradientMode::kExact &&
        config.overlap_mode == OverlapMode::kDirect) {
      value = loss_and_gradient(inputs.ansatz, theta, inputs.training, grad).value;
    } else {
      value = loss(inputs.ansatz, theta, inputs.training, config.overlap_mode,
                   shots, &shot_rng)
                  .value;
      grad = config.gradient_mode == GradientMode::kExact
                 ? gradient_exact(inputs.ansatz, theta, inputs.training)
                 : gradient_parameter_shift(inputs.ansatz, theta, inputs.training);
    }
    if (!std::isfinite(value) || !all_finite(grad)) {
      rec.failed = true;
      rec.failure = "non-finite loss or gradient at epoch " + std::to_string(epoch);
      rec.stop_reason = StopReason::kFailed;
      break;
    }
    rec.loss_history.push_back(value);
    if (progress) progress(trial_index, epoch, value);
    if (value < best) {
      best = value;
      best_theta = theta;
    }
    if (value < config.loss_threshold) {
      rec.stop_reason = StopReason::kThreshold;
      break;
    }
    if (value < plateau_ref - kPlateauTolerance) {
      plateau_ref = value;
      since_improvement = 0;
    } else if (config.plateau_patience > 0 &&
               ++since_improvement >= config.plateau_patience) {
      rec.stop_reason = StopReason::kPlateau;
      break;
    }
    optimizer.step(theta, grad);
  }

  rec.epochs_run = static_cast<int>(rec.loss_history.size());
  rec.theta_final = std::move(best_theta);
  rec.final_loss = rec.loss_history.empty() ? std::nan("") : best;
  if (rec.failed && rec.loss_history.empty()) return rec;

  const DenseUnitary circuit =
      circuit_to_unitary(inputs.ansatz.bind(rec.theta_final), inputs.ansatz.num_qubits());
  rec.similarity = similarity(circuit, inputs.target);
  rec.phase_aligned_similarity = phase_aligned_similarity(circuit, inputs.target);
  rec.accuracy = accuracy(inputs.ansatz, rec.theta_final, inputs.validation, shots,
                          &shot_rng);
  return rec;
}

SimilarityStats similarity_stats(std::span<const TrialRecord> trials) {
  SimilarityStats stats;
  double sum = 0.0, sum_sq = 0.0;
  stats.max = -std::numeric_limits<double>::infinity();
  for (const auto& t : trials) {
    if (t.failed) {
      ++stats.failed;
      continue;
    }
    ++stats.completed;
    sum += t.similarity;
    sum_sq += t.similarity * t.similarity;
    stats.max = std::max(stats.max, t.similarity);
  }
  if (stats.completed == 0) {
    stats.max = 0.0;
    return stats;
  }
  const double n = stats.completed;
  stats.mean = sum / n;
  stats.std = std::sqrt(std::max(0.0, sum_sq / n - stats.mean * stats.mean));
  return stats;
}

ExperimentResult run_experiment(const ExperimentSetup& setup) {
  if (setup.trials < 1) throw std::invalid_argument("trials must be >= 1");
  setup.optimizer.validate();
  const TrialInputs inputs{setup.ansatz, setup.training, setup.validation,
                           setup.target};

  ExperimentResult result;
  result.trials.resize(setup.trials);
  int threads = setup.threads > 0
                    ? setup.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, setup.trials);

  std::atomic<int> next{0};
  std::mutex progress_mutex;
  ProgressCallback progress;
  if (setup.progress) {
    progress = [&](int t, int e, double l) {
      std::lock_guard lock(progress_mutex);
      setup.progress(t, e, l);
    };
  }
  auto worker = [&] {
    for (int t = next++; t < setup.trials; t = next++) {
      const auto seed = derive_seed(setup.master_seed, StreamPurpose::kTrial, t);
      result.trials[t] = run_trial(setup.optimizer, inputs, seed, setup.shots, t, progress);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  result.stats = similarity_stats(result.trials);
  if (result.stats.completed == 0) {
    throw ExperimentError("all " + std::to_string(setup.trials) + " trials failed");
  }
  double best_acc = -1.0;
  std::vector<double> acc, sim;
  for (std::size_t i = 0; i < result.trials.size(); ++i) {
    const auto& t = result.trials[i];
    if (t.failed) continue;
    acc.push_back(t.accuracy);
    sim.push_back(t.similarity);
    if (t.accuracy > best_acc) {
      best_acc = t.accuracy;
      result.best_index = i;
    }
  }
  if (acc.size() >= 2) {
    result.accuracy_similarity_correlation = pearson_correlation(acc, sim);
  }
  return result;
}

}  // namespace vqpt
