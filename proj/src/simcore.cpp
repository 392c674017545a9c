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

#include "vqpt/simcore.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vqpt {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t dim_for(int num_qubits) { return std::size_t{1} << num_qubits; }

void apply_diagonal(StateVector& state, int qubit, Complex d0, Complex d1) {
  const std::size_t mask = std::size_t{1} << qubit;
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    amps[i] *= (i & mask) ? d1 : d0;
  }
}

void apply_cz(StateVector& state, int a, int b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  auto amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mask) == mask) amps[i] = -amps[i];
  }
}

}  // namespace

CapacityError::CapacityError(int num_qubits)
    : std::runtime_error("n=" + std::to_string(num_qubits) +
                         " exceeds the supported limit of " +
                         std::to_string(kMaxQubits) + " qubits"),
      num_qubits_(num_qubits) {}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("qubit count must be >= 1, got " +
                                std::to_string(num_qubits));
  }
  if (num_qubits > kMaxQubits) throw CapacityError(num_qubits);
}

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::H: return "h";
    case GateKind::T: return "t";
    case GateKind::SqrtX: return "sqrt_x";
    case GateKind::SqrtY: return "sqrt_y";
    case GateKind::CZ: return "cz";
  }
  return "?";
}

Matrix2 gate_matrix(GateKind kind, double angle) {
  Matrix2 m;
  switch (kind) {
    case GateKind::Ry: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::Rz:
      m << std::exp(-kI * (angle / 2)), 0.0, 0.0, std::exp(kI * (angle / 2));
      break;
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2;
      m << r, r, r, -r;
      break;
    }
    case GateKind::T:
      m << 1.0, 0.0, 0.0, std::exp(kI * (std::numbers::pi / 4));
      break;
    case GateKind::SqrtX:
      m << Complex(0.5, 0.5), Complex(0.5, -0.5), Complex(0.5, -0.5),
          Complex(0.5, 0.5);
      break;
    case GateKind::SqrtY:
      m << Complex(0.5, 0.5), Complex(-0.5, -0.5), Complex(0.5, 0.5),
          Complex(0.5, 0.5);
      break;
    case GateKind::CZ:
      throw std::invalid_argument("CZ has no single-qubit matrix");
  }
  return m;
}

void validate_gate(const Gate& gate, int num_qubits) {
  auto check = [&](int q) {
    if (q < 0 || q >= num_qubits) {
      std::ostringstream msg;
      msg << to_string(gate.kind) << ": qubit " << q << " out of range for "
          << num_qubits << "-qubit register";
      throw std::out_of_range(msg.str());
    }
  };
  check(gate.qubits[0]);
  if (gate.is_two_qubit()) {
    check(gate.qubits[1]);
    if (gate.qubits[0] == gate.qubits[1]) {
      throw std::out_of_range("cz: control and target must differ");
    }
  }
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amps_.assign(dim_for(num_qubits), Complex{});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size < 2 || !std::has_single_bit(size)) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int n = std::countr_zero(size);
  check_qubit_count(n);
  return StateVector(n, std::move(amplitudes));
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::normalize() {
  const double norm = std::sqrt(norm_squared());
  if (norm == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= norm;
}

Eigen::Map<const Eigen::VectorXcd> StateVector::as_vector() const {
  return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
}

Eigen::Map<Eigen::VectorXcd> StateVector::as_vector() {
  return {amps_.data(), static_cast<Eigen::Index>(amps_.size())};
}

void apply_single_qubit(StateVector& state, int qubit, const Matrix2& m) {
  const std::size_t stride = std::size_t{1} << qubit;
  auto amps = state.amplitudes();
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      const Complex a0 = amps[i];
      const Complex a1 = amps[i + stride];
      amps[i] = m00 * a0 + m01 * a1;
      amps[i + stride] = m10 * a0 + m11 * a1;
    }
  }
}

void apply_gate(StateVector& state, const Gate& gate) {
  validate_gate(gate, state.num_qubits());
  const int q = gate.qubits[0];
  switch (gate.kind) {
    case GateKind::Rz:
      apply_diagonal(state, q, std::exp(-kI * (gate.angle / 2)),
                     std::exp(kI * (gate.angle / 2)));
      break;
    case GateKind::T:
      apply_diagonal(state, q, 1.0, std::exp(kI * (std::numbers::pi / 4)));
      break;
    case GateKind::CZ:
      apply_cz(state, q, gate.qubits[1]);
      break;
    default:
      apply_single_qubit(state, q, gate_matrix(gate.kind, gate.angle));
  }
}

StateVector applied(StateVector state, const Gate& gate) {
  apply_gate(state, gate);
  return state;
}

void apply_circuit(StateVector& state, std::span<const Gate> gates) {
  for (const auto& g : gates) apply_gate(state, g);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw DimensionError("inner_product: " + std::to_string(a.num_qubits()) +
                         " vs " + std::to_string(b.num_qubits()) + " qubits");
  }
  Complex acc{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

DenseUnitary::DenseUnitary(int num_qubits, Matrix matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(num_qubits);
  const auto d = static_cast<Eigen::Index>(dim_for(num_qubits));
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("unitary must be " + std::to_string(d) + "x" +
                         std::to_string(d));
  }
}

DenseUnitary DenseUnitary::identity(int num_qubits) {
  check_qubit_count(num_qubits);
  const auto d = static_cast<Eigen::Index>(dim_for(num_qubits));
  return DenseUnitary(num_qubits, Matrix::Identity(d, d));
}

double DenseUnitary::unitarity_error() const {
  return (matrix_.adjoint() * matrix_ -
          Matrix::Identity(matrix_.rows(), matrix_.cols()))
      .norm();
}

StateVector DenseUnitary::apply(const StateVector& state) const {
  if (state.num_qubits() != num_qubits_) {
    throw DimensionError("unitary and state sizes differ");
  }
  StateVector out(num_qubits_);
  out.as_vector().noalias() = matrix_ * state.as_vector();
  return out;
}

DenseUnitary circuit_to_unitary(std::span<const Gate> gates, int num_qubits) {
  check_qubit_count(num_qubits);
  for (const auto& g : gates) validate_gate(g, num_qubits);
  const std::size_t d = dim_for(num_qubits);
  Matrix m(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    StateVector column = StateVector::basis(num_qubits, k);
    apply_circuit(column, gates);
    m.col(static_cast<Eigen::Index>(k)) = column.as_vector();
  }
  return DenseUnitary(num_qubits, std::move(m));
}

}  // namespace vqpt
