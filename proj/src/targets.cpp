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

#include "vqpt/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "vqpt/rng.hpp"

namespace vqpt {

namespace {

void check_xxz(const XXZParams& p) {
  if (p.n < 2) throw std::invalid_argument("xxz: n must be >= 2");
  check_qubit_count(p.n);
  if (p.dt < 0) throw std::invalid_argument("xxz: dt must be >= 0");
}

void check_rqc(const RQCParams& p) {
  if (p.n < 2) throw std::invalid_argument("rqc: n must be >= 2");
  check_qubit_count(p.n);
  if (p.depth < 1) throw std::invalid_argument("rqc: depth must be >= 1");
}

}  // namespace

Matrix build_xxz_hamiltonian(const XXZParams& p) {
  check_xxz(p);
  const std::size_t dim = std::size_t{1} << p.n;
  Matrix H = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double diag = 0.0;
    for (int q = 0; q < p.n; ++q) diag += (k >> q & 1) ? -p.h : p.h;
    for (int l = 0; l + 1 < p.n; ++l) {
      const bool a = k >> l & 1;
      const bool b = k >> (l + 1) & 1;
      diag += (a == b) ? p.delta : -p.delta;
      // XX + YY = 2(|01><10| + |10><01|) on the pair.
      if (a != b) {
        const std::size_t flipped = k ^ (std::size_t{3} << l);
        H(flipped, k) += 2.0 * p.J;
      }
    }
    H(k, k) += diag;
  }
  return H;
}

DenseUnitary evolve_unitary(const Matrix& hamiltonian, double dt) {
  if (hamiltonian.rows() != hamiltonian.cols()) {
    throw DimensionError("hamiltonian must be square");
  }
  const auto dim = static_cast<std::size_t>(hamiltonian.rows());
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw DimensionError("hamiltonian dimension must be a power of two");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hamiltonian);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigendecomposition failed");
  }
  const Eigen::VectorXd& energies = solver.eigenvalues();
  Eigen::VectorXcd phases(energies.size());
  for (Eigen::Index i = 0; i < energies.size(); ++i) {
    phases[i] = std::exp(Complex(0.0, -energies[i] * dt));
  }
  const Matrix& V = solver.eigenvectors();
  Matrix U = V * phases.asDiagonal() * V.adjoint();
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return DenseUnitary(n, std::move(U));
}

std::vector<Gate> build_random_circuit(const RQCParams& p) {
  check_rqc(p);
  Rng rng(p.seed);
  std::vector<Gate> gates;
  for (int q = 0; q < p.n; ++q) gates.push_back(Gate::h(q));
  for (int layer = 0; layer < p.depth; ++layer) {
    for (int q = layer % 2; q + 1 < p.n; q += 2) {
      gates.push_back(Gate::cz(q, q + 1));
    }
    for (int q = 0; q < p.n; ++q) {
      switch (rng.below(3)) {
        case 0: gates.push_back(Gate::t(q)); break;
        case 1: gates.push_back(Gate::sqrt_x(q)); break;
        default: gates.push_back(Gate::sqrt_y(q)); break;
      }
    }
  }
  for (int q = 0; q < p.n; ++q) gates.push_back(Gate::h(q));
  return gates;
}

TargetProcess make_xxz_target(const XXZParams& p) {
  return {evolve_unitary(build_xxz_hamiltonian(p), p.dt), p};
}

TargetProcess make_rqc_target(const RQCParams& p) {
  return {circuit_to_unitary(build_random_circuit(p), p.n), p};
}

void to_json(nlohmann::json& j, const TargetProvenance& provenance) {
  if (const auto* x = std::get_if<XXZParams>(&provenance)) {
    j = {{"kind", "xxz"}, {"n", x->n},  {"J", x->J},
         {"delta", x->delta}, {"h", x->h}, {"dt", x->dt}};
  } else {
    const auto& r = std::get<RQCParams>(provenance);
    j = {{"kind", "rqc"}, {"n", r.n}, {"depth", r.depth}, {"seed", r.seed}};
  }
}

TargetProvenance provenance_from_json(const nlohmann::json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "xxz") {
    return XXZParams{j.at("n").get<int>(), j.at("J").get<double>(),
                     j.at("delta").get<double>(), j.at("h").get<double>(),
                     j.at("dt").get<double>()};
  }
  if (kind == "rqc") {
    return RQCParams{j.at("n").get<int>(), j.at("depth").get<int>(),
                     j.at("seed").get<std::uint64_t>()};
  }
  throw std::invalid_argument("unknown target kind '" + kind + "'");
}

}  // namespace vqpt
