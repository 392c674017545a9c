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

// Dense statevector simulation.
//
// Qubit 0 is the least-significant bit of an amplitude index: the basis state
// |q_{n-1} ... q_1 q_0> lives at index sum_q q_q * 2^q. Matrices are Eigen
// column-major, so column k of a circuit unitary is the circuit applied to
// basis state |k>.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace vqpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Largest register the simulator will allocate.
inline constexpr int kMaxQubits = 12;

/// Thrown when a qubit count exceeds kMaxQubits.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(int num_qubits);
  int num_qubits() const { return num_qubits_; }

 private:
  int num_qubits_;
};

/// Thrown when two objects of different register size are combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws CapacityError (too large) or std::invalid_argument (< 1).
void check_qubit_count(int num_qubits);

enum class GateKind { Ry, Rz, H, T, SqrtX, SqrtY, CZ };

std::string_view to_string(GateKind kind);

/// One gate instance. Rotation gates carry an angle in radians, and may carry
/// a parameter slot when they belong to a trainable layout.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;
  int param = -1;

  static Gate ry(int q, double angle) { return {GateKind::Ry, {q, -1}, angle}; }
  static Gate rz(int q, double angle) { return {GateKind::Rz, {q, -1}, angle}; }
  static Gate h(int q) { return {GateKind::H, {q, -1}}; }
  static Gate t(int q) { return {GateKind::T, {q, -1}}; }
  static Gate sqrt_x(int q) { return {GateKind::SqrtX, {q, -1}}; }
  static Gate sqrt_y(int q) { return {GateKind::SqrtY, {q, -1}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}}; }

  bool is_two_qubit() const { return kind == GateKind::CZ; }
  bool is_rotation() const { return kind == GateKind::Ry || kind == GateKind::Rz; }

  bool operator==(const Gate&) const = default;
};

/// 2x2 matrix of a single-qubit gate kind at the given angle.
Matrix2 gate_matrix(GateKind kind, double angle = 0.0);

/// Throws std::out_of_range unless the gate's qubits are distinct and < n.
void validate_gate(const Gate& gate, int num_qubits);

/// Pure state of num_qubits qubits.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(int num_qubits);

  static StateVector basis(int num_qubits, std::uint64_t index);
  /// Takes amplitudes as given; the length must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }

  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }

  double norm_squared() const;
  void normalize();

  Eigen::Map<const Eigen::VectorXcd> as_vector() const;
  Eigen::Map<Eigen::VectorXcd> as_vector();

 private:
  StateVector(int num_qubits, std::vector<Complex> amps)
      : num_qubits_(num_qubits), amps_(std::move(amps)) {}

  int num_qubits_;
  std::vector<Complex> amps_;
};

/// Applies an arbitrary 2x2 unitary to one qubit, in place.
void apply_single_qubit(StateVector& state, int qubit, const Matrix2& m);

/// Applies the gate in place. Throws std::out_of_range on bad qubit indices.
void apply_gate(StateVector& state, const Gate& gate);

/// Value-returning form of apply_gate.
StateVector applied(StateVector state, const Gate& gate);

void apply_circuit(StateVector& state, std::span<const Gate> gates);

/// <a|b> = sum_i conj(a_i) b_i.
Complex inner_product(const StateVector& a, const StateVector& b);

/// Square unitary on num_qubits qubits.
class DenseUnitary {
 public:
  DenseUnitary() = default;
  DenseUnitary(int num_qubits, Matrix matrix);

  static DenseUnitary identity(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

  /// ||M^dagger M - I||_F.
  double unitarity_error() const;

  /// U|state>.
  StateVector apply(const StateVector& state) const;

 private:
  int num_qubits_ = 0;
  Matrix matrix_;
};

/// Column k is the circuit applied to |k>.
DenseUnitary circuit_to_unitary(std::span<const Gate> gates, int num_qubits);

}  // namespace vqpt
