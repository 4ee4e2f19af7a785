// Copyright 2025 The lcusim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lcu {

enum class GateKind { Rx, Ry, Rz, U2x2, Cx, X, H, Measure };

struct Gate {
  GateKind kind;
  std::vector<int> qubits;   // cx: {control, target}; otherwise one qubit
  double angle = 0.0;        // rotation kinds only
  Eigen::Matrix2cd matrix;   // u2x2 payload

  static Gate rx(int q, double angle);
  static Gate ry(int q, double angle);
  static Gate rz(int q, double angle);
  static Gate u2x2(int q, const Eigen::Matrix2cd& m);
  static Gate cx(int control, int target);
  static Gate x(int q);
  static Gate h(int q);
  static Gate measure(int q);
};

// Gate-level IR. Gates apply in list order; unitary_of(c) is the matrix
// product G_last * ... * G_first * exp(i * global_phase).
class Circuit {
 public:
  explicit Circuit(int n_qubits = 0);

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  double global_phase() const { return global_phase_; }

  void add(Gate g);
  void add_phase(double radians) { global_phase_ += radians; }
  void append(const Circuit& other);

  // Reversed gate list with each gate inverted; measures are rejected.
  Circuit adjoint() const;

  // Rewrites u2x2 gates as rz-ry-rz (+ global phase).
  Circuit lower_u2x2(double tol = 1e-10) const;

  std::size_t gate_count() const { return gates_.size(); }
  bool has_measure() const;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  double global_phase_ = 0.0;
};

// Greedy earliest-layer depth; gates on disjoint qubits share a layer.
int depth(const Circuit& c);

int two_qubit_count(const Circuit& c);

// Dense unitary oracle; guarded to n <= 12 and rejects measure gates.
Eigen::MatrixXcd unitary_of(const Circuit& c);

Eigen::Matrix2cd gate_matrix_2x2(const Gate& g);

// ZYZ Euler angles: U = e^{i phase} Rz(beta) * diag-free ... returns
// (phase, beta, gamma, delta) with U = e^{i phase} Rz(delta) Ry(gamma) Rz(beta)
// as a matrix product (Rz(beta) applied first).
struct EulerZYZ {
  double phase, beta, gamma, delta;
};
EulerZYZ euler_zyz(const Eigen::Matrix2cd& u, double tol = 1e-10);

// OpenQASM 2.0 subset. u2x2 gates must be lowered first.
std::string export_qasm(const Circuit& c);
Circuit import_qasm(const std::string& text);

}  // namespace lcu
