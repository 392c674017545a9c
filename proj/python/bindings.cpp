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

// Python bindings. States are 1-D complex128 arrays (qubit 0 is the least
// significant index bit); unitaries are 2-D complex128 arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vqpt/experiment.hpp"

namespace py = pybind11;

namespace vqpt {
namespace {

StateVector to_state(const Eigen::VectorXcd& v) {
  return StateVector::from_amplitudes(std::vector<Complex>(v.data(), v.data() + v.size()));
}

Eigen::VectorXcd to_array(const StateVector& s) { return s.as_vector(); }

DenseUnitary to_unitary(const Matrix& m) {
  int n = 0;
  while ((Eigen::Index{1} << n) < m.rows()) ++n;
  return DenseUnitary(n, m);
}

Dataset to_dataset(const py::dict& d) {
  return d["_dataset"].cast<Dataset>();
}

py::dict dataset_dict(Dataset ds) {
  py::dict out;
  py::list inputs, ideals;
  for (const auto& s : ds.inputs) inputs.append(to_array(s));
  for (const auto& s : ds.ideal_outputs) ideals.append(to_array(s));
  out["inputs"] = inputs;
  out["ideal_outputs"] = ideals;
  out["seed"] = ds.seed;
  out["_dataset"] = py::cast(std::move(ds));
  return out;
}

py::dict trial_dict(const TrialRecord& t) {
  py::dict d;
  d["trial"] = t.trial_index;
  d["seed"] = t.trial_seed;
  d["epochs_run"] = t.epochs_run;
  d["loss_history"] = t.loss_history;
  d["theta"] = t.theta_final;
  d["final_loss"] = t.final_loss;
  d["similarity"] = t.similarity;
  d["phase_aligned_similarity"] = t.phase_aligned_similarity;
  d["accuracy"] = t.accuracy;
  d["stop_reason"] = std::string(to_string(t.stop_reason));
  d["failed"] = t.failed;
  return d;
}

}  // namespace
}  // namespace vqpt

PYBIND11_MODULE(_core, m) {
  using namespace vqpt;
  m.doc() = "Variational process tomography core";
  m.attr("__version__") = VQPT_VERSION;
  m.attr("MAX_QUBITS") = kMaxQubits;

  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ExperimentError>(m, "ExperimentError", PyExc_RuntimeError);

  py::class_<Dataset>(m, "_Dataset");

  py::class_<Ansatz>(m, "Ansatz")
      .def(py::init([](int n, int d, const std::string& pattern) {
             return build_ansatz(n, d, parse_pattern(pattern));
           }),
           py::arg("n"), py::arg("d"), py::arg("pattern") = "ladder")
      .def_property_readonly("num_qubits", &Ansatz::num_qubits)
      .def_property_readonly("depth", &Ansatz::depth)
      .def_property_readonly("num_params", &Ansatz::num_params)
      .def("unitary",
           [](const Ansatz& a, const std::vector<double>& theta) {
             return circuit_to_unitary(a.bind(theta), a.num_qubits()).matrix();
           })
      .def("apply", [](const Ansatz& a, const std::vector<double>& theta,
                       const Eigen::VectorXcd& state) {
        auto s = to_state(state);
        a.apply(theta, s);
        return to_array(s);
      });

  m.def("xxz_hamiltonian",
        [](int n, double J, double delta, double h) {
          return build_xxz_hamiltonian({n, J, delta, h, 0.0});
        },
        py::arg("n"), py::arg("J") = 1.0, py::arg("delta") = 1.0, py::arg("h") = 0.1);
  m.def("xxz_unitary",
        [](int n, double J, double delta, double h, double dt) {
          return make_xxz_target({n, J, delta, h, dt}).unitary.matrix();
        },
        py::arg("n"), py::arg("J") = 1.0, py::arg("delta") = 1.0, py::arg("h") = 0.1,
        py::arg("dt") = 0.01);
  m.def("rqc_unitary",
        [](int n, int depth, std::uint64_t seed) {
          return make_rqc_target({n, depth, seed}).unitary.matrix();
        },
        py::arg("n"), py::arg("depth"), py::arg("seed") = 0);

  m.def("make_dataset",
        [](const Matrix& target, int count, std::uint64_t seed, const std::string& role) {
          const auto u = to_unitary(target);
          const auto r = role == "validation" ? DatasetRole::kValidation : DatasetRole::kTraining;
          return dataset_dict(make_dataset(u.num_qubits(), count, u, seed, r));
        },
        py::arg("target"), py::arg("count"), py::arg("seed"), py::arg("role") = "training");

  m.def("fidelity",
        [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, std::uint64_t shots,
           std::uint64_t seed) {
          Rng rng(seed);
          return fidelity(to_state(a), to_state(b), Shots(shots), shots ? &rng : nullptr);
        },
        py::arg("a"), py::arg("b"), py::arg("shots") = 0, py::arg("seed") = 0);
  m.def("overlap",
        [](const Eigen::VectorXcd& psi, const Eigen::VectorXcd& phi) {
          const auto e = generalized_overlap(to_state(psi), to_state(phi));
          return py::make_tuple(e.c_re, e.c_im_abs);
        },
        "(Re<psi|phi>, |Im<psi|phi>|) from SWAP-test probabilities");

  m.def("loss", [](const Ansatz& a, const std::vector<double>& theta, const py::dict& ds) {
    return loss(a, theta, to_dataset(ds)).value;
  });
  m.def("gradient",
        [](const Ansatz& a, const std::vector<double>& theta, const py::dict& ds,
           const std::string& mode) {
          return parse_gradient_mode(mode) == GradientMode::kExact
                     ? gradient_exact(a, theta, to_dataset(ds))
                     : gradient_parameter_shift(a, theta, to_dataset(ds));
        },
        py::arg("ansatz"), py::arg("theta"), py::arg("dataset"), py::arg("mode") = "exact");
  m.def("similarity", [](const Matrix& c, const Matrix& u) {
    return similarity(to_unitary(c), to_unitary(u));
  });
  m.def("accuracy", [](const Ansatz& a, const std::vector<double>& theta, const py::dict& ds) {
    return accuracy(a, theta, to_dataset(ds));
  });

  m.def("learn",
        [](const std::string& config_json, int threads) {
          const auto config = parse_config(config_json, "<python>");
          const auto target = build_target(config);
          auto setup = prepare_experiment(config, target);
          setup.threads = threads;
          ExperimentResult result;
          {
            py::gil_scoped_release release;
            result = run_experiment(setup);
          }
          py::list trials;
          for (const auto& t : result.trials) trials.append(trial_dict(t));
          py::dict out;
          out["trials"] = trials;
          out["best_trial"] = result.best_index;
          out["max_similarity"] = result.stats.max;
          out["mean_similarity"] = result.stats.mean;
          out["std_similarity"] = result.stats.std;
          out["accuracy_similarity_correlation"] = result.accuracy_similarity_correlation;
          return out;
        },
        py::arg("config_json"), py::arg("threads") = 0,
        "Runs the experiment described by a JSON config string; writes no files.");
}
