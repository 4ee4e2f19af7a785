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
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lcu/circuit.hpp"
#include "lcu/pauli.hpp"
#include "lcu/state.hpp"

namespace lcu {

// List of 2^k single-qubit unitaries indexed by control bit-pattern
// (control_qubits[0] is the most significant control bit).
struct MultiplexorSpec {
  std::vector<int> control_qubits;
  int target_qubit = 0;
  std::vector<Eigen::Matrix2cd> targets;

  void validate() const;
};

// One constant-demultiplexing step: V0 = r^dag W d L and V1 = r W d^dag L
// with d = diag(e^{i pi/4}, e^{-i pi/4}) and r = diag(r0, r1).
struct DemuxStep {
  Eigen::Matrix2cd l;
  Eigen::Matrix2cd w;
  Eigen::Vector2cd r;

  static Eigen::Matrix2cd d();
  double residual(const Eigen::Matrix2cd& v0, const Eigen::Matrix2cd& v1) const;
};

DemuxStep demultiplex_pair(const Eigen::Matrix2cd& v0, const Eigen::Matrix2cd& v1);

enum class RotationAxis { Ry, Rz };

// Multiplexed rotation: exactly 2^k cx and 2^k rotations (k = controls.size();
// k = 0 gives one rotation and no cx).
Circuit synth_multiplexed_rotation(RotationAxis axis,
                                   const std::vector<double>& angles,
                                   const std::vector<int>& controls, int target,
                                   int n_qubits);

// Multiplexed-U(2) via recursive demultiplexing with the inner diagonals
// merged forward; at most (2^k - 1) + (2^{k+1} - 2) cx.
Circuit synth_multiplexed_u2(const MultiplexorSpec& spec);

// Real-amplitude preparation: |0...0> -> sum sqrt(w_l / |w|_1) |l> using
// multiplexed-ry only; at most 2^k - 2 cx.
Circuit synth_prepare(const std::vector<double>& weights);

// SELECT(Y) = sum_l |l><l| (x) P_l with term phases absorbed into the j=0
// tensor factor and unused control patterns mapping to identity; at most
// 2^k (2n+1) - n - 2 cx.
Circuit synth_select(const PauliSum& y, const std::vector<int>& control_qubits,
                     const std::vector<int>& system_qubits, int n_qubits);

// PREPARE(alpha) . SELECT(Y) . PREPARE(alpha)^dag with ancillas first; the
// all-zero ancilla block equals Y / |alpha|_1.
Circuit synth_lcu(const PauliSum& y);

// Arbitrary-state preparation from |0...0> (interleaved multiplexed ry/rz).
Circuit synth_state_prep(const StateVector& psi);

// W followed by `rounds` applications of A = -W R W^dag R where R reflects
// about |0...0> on the ancilla register.
Circuit synth_oaa(const PauliSum& y, int rounds);

// First-order product step: prod_j exp(-i coeff_j tau P_j) over terms in
// canonical order, as basis-change + cx ladder + rz gadgets.
Circuit synth_trotter_step(const PauliSum& h, double tau);

// Cost models (cx counts) for SELECT compilation strategies.
std::int64_t multiplexor_cost(int k, int n);
std::int64_t unary_iteration_cost(int k, int n);

}  // namespace lcu
