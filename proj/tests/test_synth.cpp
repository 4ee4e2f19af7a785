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

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "lcu/sim.hpp"
#include "lcu/synth.hpp"
#include "test_util.hpp"

using namespace lcu;
using lcu::test::max_abs_diff;
using lcu::test::random_state;
using lcu::test::random_sum;
using lcu::test::random_u2;

namespace {

const Complex kImag(0.0, 1.0);

Eigen::Matrix2cd rot_matrix(RotationAxis axis, double angle) {
  const Gate g = axis == RotationAxis::Ry ? Gate::ry(0, angle) : Gate::rz(0, angle);
  return gate_matrix_2x2(g);
}

// Independent oracle: block-diagonal multiplexor matrix with controls on the
// top qubits and the target last.
Eigen::MatrixXcd mux_oracle(const std::vector<Eigen::Matrix2cd>& targets) {
  const std::size_t slots = targets.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * slots, 2 * slots);
  for (std::size_t j = 0; j < slots; ++j) {
    m.block(2 * static_cast<std::int64_t>(j), 2 * static_cast<std::int64_t>(j), 2, 2) =
        targets[j];
  }
  return m;
}

// Independent oracle for SELECT: sum over terms of |l><l| (x) phased string,
// identity on unused patterns.
Eigen::MatrixXcd select_oracle(const PauliSum& y, int k) {
  const std::size_t slots = std::size_t{1} << k;
  const std::int64_t sys_dim = 1ll << y.n_qubits();
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(slots * sys_dim, slots * sys_dim);
  for (std::size_t l = 0; l < slots; ++l) {
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(sys_dim, sys_dim);
    if (l < y.size()) {
      const Complex c = y.entries()[l].coeff;
      block = to_dense(y.term_at(l)) * (c / std::abs(c));
    }
    m.block(static_cast<std::int64_t>(l) * sys_dim,
            static_cast<std::int64_t>(l) * sys_dim, sys_dim, sys_dim) = block;
  }
  return m;
}

std::vector<int> iota_vec(int count, int start = 0) {
  std::vector<int> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = start + i;
  return v;
}

}  // namespace

TEST_CASE("demultiplex_pair reconstructs both blocks") {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  CHECK(demultiplex_pair(id, id).residual(id, id) < 1e-10);
  CHECK(demultiplex_pair(id, x).residual(id, x) < 1e-10);

  Xoshiro256 rng(101);
  double worst = 0;
  for (int it = 0; it < 1000; ++it) {
    const Eigen::Matrix2cd v0 = random_u2(rng);
    const Eigen::Matrix2cd v1 = random_u2(rng);
    worst = std::max(worst, demultiplex_pair(v0, v1).residual(v0, v1));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("demultiplex_pair rejects non-unitary input") {
  Eigen::Matrix2cd bad;
  bad << 1, 1, 1, 1;
  CHECK_THROWS_AS(demultiplex_pair(bad, Eigen::Matrix2cd::Identity()),
                  std::invalid_argument);
}

TEST_CASE("multiplexed rotation: exact counts and matrix") {
  Xoshiro256 rng(55);
  for (int k = 0; k <= 3; ++k) {
    const std::size_t slots = std::size_t{1} << k;
    std::vector<double> angles(slots);
    for (auto& a : angles) a = 4.0 * rng.next_double() - 2.0;
    for (const RotationAxis axis : {RotationAxis::Ry, RotationAxis::Rz}) {
      const Circuit c = synth_multiplexed_rotation(axis, angles, iota_vec(k), k, k + 1);
      const int expected_cx = k == 0 ? 0 : static_cast<int>(slots);
      CHECK(two_qubit_count(c) == expected_cx);
      int rotations = 0;
      for (const Gate& g : c.gates()) {
        rotations += (g.kind == GateKind::Ry || g.kind == GateKind::Rz) ? 1 : 0;
      }
      CHECK(rotations == static_cast<int>(slots));
      std::vector<Eigen::Matrix2cd> blocks(slots);
      for (std::size_t j = 0; j < slots; ++j) blocks[j] = rot_matrix(axis, angles[j]);
      CHECK(max_abs_diff(unitary_of(c), mux_oracle(blocks)) < 1e-10);
    }
  }
}

TEST_CASE("multiplexed U(2): known gate and random dense checks") {
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  MultiplexorSpec cx_spec{{0}, 1, {Eigen::Matrix2cd::Identity(), x}};
  const Circuit as_cx = synth_multiplexed_u2(cx_spec);
  Circuit plain(2);
  plain.add(Gate::cx(0, 1));
  CHECK(max_abs_diff(unitary_of(as_cx), unitary_of(plain)) < 1e-10);

  Xoshiro256 rng(77);
  for (int k = 1; k <= 3; ++k) {
    const std::size_t slots = std::size_t{1} << k;
    MultiplexorSpec spec;
    spec.control_qubits = iota_vec(k);
    spec.target_qubit = k;
    spec.targets.resize(slots);
    for (auto& t : spec.targets) t = random_u2(rng);
    const Circuit c = synth_multiplexed_u2(spec);
    CHECK(max_abs_diff(unitary_of(c), mux_oracle(spec.targets)) < 1e-9);
    const int bound = static_cast<int>((slots - 1) + (2 * slots - 2));
    CHECK(two_qubit_count(c) <= bound);
  }
}

TEST_CASE("multiplexor spec validation") {
  MultiplexorSpec spec;
  spec.control_qubits = {0};
  spec.target_qubit = 0;
  spec.targets = {Eigen::Matrix2cd::Identity(), Eigen::Matrix2cd::Identity()};
  CHECK_THROWS_AS(synth_multiplexed_u2(spec), std::invalid_argument);
  spec.target_qubit = 1;
  spec.targets.pop_back();
  CHECK_THROWS_AS(synth_multiplexed_u2(spec), std::invalid_argument);
}

TEST_CASE("prepare: single qubit case is one ry") {
  const double phi = 0.7, scale = 2.3;
  const std::vector<double> w = {scale * std::cos(phi) * std::cos(phi),
                                 scale * std::sin(phi) * std::sin(phi)};
  const Circuit c = synth_prepare(w);
  REQUIRE(c.gate_count() == 1);
  CHECK(c.gates()[0].kind == GateKind::Ry);
  CHECK(std::abs(c.gates()[0].angle - 2.0 * phi) < 1e-12);
  CHECK(two_qubit_count(c) == 0);
}

TEST_CASE("prepare: uniform and random weights hit the target amplitudes") {
  const Circuit uniform = synth_prepare({1.0, 1.0, 1.0, 1.0});
  CHECK(two_qubit_count(uniform) <= 2);
  const StateVector out = run(uniform, StateVector::zero_state(2));
  for (const auto& a : out.amps) CHECK(std::abs(a - Complex(0.5, 0)) < 1e-12);

  Xoshiro256 rng(91);
  for (int it = 0; it < 20; ++it) {
    std::vector<double> w(8);
    double total = 0;
    for (auto& x : w) {
      x = rng.next_double();
      total += x;
    }
    const Circuit c = synth_prepare(w);
    CHECK(two_qubit_count(c) <= 6);
    const StateVector amp = run(c, StateVector::zero_state(3));
    for (std::size_t l = 0; l < 8; ++l) {
      CHECK(std::abs(amp.amps[l] - Complex(std::sqrt(w[l] / total), 0)) < 1e-10);
    }
  }
}

TEST_CASE("prepare rejects degenerate weights") {
  CHECK_THROWS_AS(synth_prepare({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(synth_prepare({1.0, -0.1}), std::invalid_argument);
}

TEST_CASE("select: identity operator synthesizes to nothing") {
  const PauliSum y = PauliSum::identity(2);
  const Circuit c = synth_select(y, {}, {0, 1}, 2);
  CHECK(two_qubit_count(c) == 0);
  CHECK(c.gate_count() == 0);
  CHECK(max_abs_diff(unitary_of(c), Eigen::MatrixXcd::Identity(4, 4)) < 1e-12);
}

TEST_CASE("select: diagonal one-qubit operator stays under the bound") {
  PauliSum y(1);
  y.accumulate(PauliTerm::from_letters("I"), 0.8);
  y.accumulate(PauliTerm::from_letters("Z"), Complex(0.0, -0.6));
  y.canonicalize();
  const Circuit c = synth_select(y, {0}, {1}, 2);
  CHECK(two_qubit_count(c) <= 3);  // 2 * 3 - 1 - 2
  CHECK(max_abs_diff(unitary_of(c), select_oracle(y, 1)) < 1e-9);
}

TEST_CASE("select: random operators match the oracle with bounds") {
  Xoshiro256 rng(123);
  for (int it = 0; it < 25; ++it) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    const int n = 1 + static_cast<int>(rng.next_u64() % 3);
    const std::size_t max_terms = std::size_t{1} << k;
    const std::size_t n_terms = 1 + rng.next_u64() % max_terms;
    const PauliSum y = random_sum(n, n_terms, rng);
    if (y.size() == 0) continue;
    const Circuit c = synth_select(y, iota_vec(k), iota_vec(n, k), k + n);
    CHECK(two_qubit_count(c) <= multiplexor_cost(k, n));
    CHECK(max_abs_diff(unitary_of(c), select_oracle(y, k)) < 1e-9);
  }
}

TEST_CASE("select rejects oversized operators") {
  Xoshiro256 rng(5);
  const PauliSum y = random_sum(2, 9, rng);
  if (y.size() > 4) {
    CHECK_THROWS_AS(synth_select(y, {0, 1}, {2, 3}, 4), std::invalid_argument);
  }
}

TEST_CASE("lcu block encodes the rescaled operator") {
  PauliSum y(1);
  y.accumulate(PauliTerm::from_letters("I"), 1.0);
  y.accumulate(PauliTerm::from_letters("Z"), 1.0);
  y.canonicalize();
  const Circuit c = synth_lcu(y);
  REQUIRE(c.n_qubits() == 2);
  const Eigen::MatrixXcd u = unitary_of(c);
  Eigen::MatrixXcd expected(2, 2);
  expected << 1, 0, 0, 0;
  CHECK(max_abs_diff(u.block(0, 0, 2, 2), expected) < 1e-9);

  Xoshiro256 rng(321);
  for (int it = 0; it < 10; ++it) {
    const PauliSum op = random_sum(2, 5, rng);
    if (op.size() == 0) continue;
    const Circuit lcu = synth_lcu(op);
    const Eigen::MatrixXcd full = unitary_of(lcu);
    CHECK(max_abs_diff(full.block(0, 0, 4, 4), to_dense(op) / l1_norm(op)) < 1e-9);
  }
}

TEST_CASE("lcu of a single-term operator needs no ancilla") {
  PauliSum y(2);
  y.accumulate(PauliTerm::from_letters("XZ"), Complex(0, -2.0));
  y.canonicalize();
  const Circuit c = synth_lcu(y);
  CHECK(c.n_qubits() == 2);
  CHECK(max_abs_diff(unitary_of(c), to_dense(y) / l1_norm(y)) < 1e-9);
}

TEST_CASE("state prep reproduces trivial and random states") {
  const Circuit empty = synth_state_prep(StateVector::zero_state(1));
  CHECK(empty.gate_count() == 0);

  const double theta = 0.4;
  StateVector plane = StateVector::zero_state(1);
  plane.amps = {std::cos(theta), std::sin(theta)};
  const Circuit ry = synth_state_prep(plane);
  REQUIRE(ry.gate_count() == 1);
  CHECK(ry.gates()[0].kind == GateKind::Ry);
  CHECK(std::abs(ry.gates()[0].angle - 2.0 * theta) < 1e-12);

  Xoshiro256 rng(17);
  for (int it = 0; it < 20; ++it) {
    const int n = 1 + static_cast<int>(rng.next_u64() % 4);
    const StateVector psi = random_state(n, rng);
    const StateVector out = run(synth_state_prep(psi), StateVector::zero_state(n));
    double diff = 0;
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
      diff = std::max(diff, std::abs(out.amps[i] - psi.amps[i]));
    }
    CHECK(diff < 1e-10);  // global phase tracked, so amplitudes match exactly
  }
}

TEST_CASE("state prep rejects the zero vector") {
  StateVector z = StateVector::zero_state(1);
  z.amps[0] = 0.0;
  CHECK_THROWS_AS(synth_state_prep(z), std::invalid_argument);
}

TEST_CASE("oaa with zero rounds is the plain lcu") {
  PauliSum y(1);
  y.accumulate(PauliTerm::from_letters("I"), 0.6);
  y.accumulate(PauliTerm::from_letters("X"), 0.4);
  y.canonicalize();
  const Circuit w = synth_lcu(y);
  const Circuit a0 = synth_oaa(y, 0);
  CHECK(a0.gate_count() == w.gate_count());
  CHECK(max_abs_diff(unitary_of(a0), unitary_of(w)) < 1e-12);
}

TEST_CASE("oaa amplifies the p=1/4 operator to certainty") {
  // 0.5 II - 0.5i IZ - 0.5i ZI - 0.5 ZZ is exp(-i pi/4 Z) (x) exp(-i pi/4 Z):
  // unitary with l1 norm 2, so p = 1/4 for every input state.
  PauliSum y(2);
  y.accumulate(PauliTerm::from_letters("II"), 0.5);
  y.accumulate(PauliTerm::from_letters("IZ"), Complex(0, -0.5));
  y.accumulate(PauliTerm::from_letters("ZI"), Complex(0, -0.5));
  y.accumulate(PauliTerm::from_letters("ZZ"), -0.5);
  y.canonicalize();
  Xoshiro256 rng(71);
  const StateVector psi = random_state(2, rng);
  CHECK(std::abs(lcu_success_probability(y, psi) - 0.25) < 1e-12);

  const Circuit amplified = synth_oaa(y, 1);
  const int n_anc = amplified.n_qubits() - 2;
  StateVector input = StateVector::zero_state(amplified.n_qubits());
  for (std::size_t i = 0; i < psi.amps.size(); ++i) input.amps[i] = psi.amps[i];
  const StateVector out = run(amplified, input);
  const auto [p_amp, post] = postselect_zero(out, iota_vec(n_anc));
  const double expected = 0.25 * std::pow(4.0 * 0.25 - 3.0, 2);
  CHECK(std::abs(p_amp - expected) < 1e-9);
  CHECK(std::abs(p_amp - 1.0) < 1e-9);
}

TEST_CASE("oaa on a non-unitary operator matches the dense amplification law") {
  PauliSum y(1);
  y.accumulate(PauliTerm::from_letters("I"), 0.6);
  y.accumulate(PauliTerm::from_letters("Z"), 0.4);
  y.canonicalize();
  StateVector psi = StateVector::zero_state(1);
  psi.amps = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};

  const Circuit amplified = synth_oaa(y, 1);
  const int n_anc = amplified.n_qubits() - 1;
  StateVector input = StateVector::zero_state(amplified.n_qubits());
  input.amps[0] = psi.amps[0];
  input.amps[1] = psi.amps[1];
  const StateVector out = run(amplified, input);
  const auto [p_meas, post] = postselect_zero(out, iota_vec(n_anc));

  const double l1 = l1_norm(y);
  const Eigen::MatrixXcd yd = to_dense(y);
  const Eigen::MatrixXcd m =
      3.0 * yd - (4.0 / (l1 * l1)) * yd * yd.adjoint() * yd;
  Eigen::Vector2cd v(psi.amps[0], psi.amps[1]);
  const double p_expected = (m * v).squaredNorm() / (l1 * l1);
  CHECK(std::abs(p_meas - p_expected) < 1e-9);
}

TEST_CASE("trotter gadgets match the exponential oracle") {
  PauliSum hz(1);
  hz.accumulate(PauliTerm::from_letters("Z"), 0.7);
  hz.canonicalize();
  const Circuit single = synth_trotter_step(hz, 0.3);
  REQUIRE(single.gate_count() == 1);
  CHECK(single.gates()[0].kind == GateKind::Rz);
  CHECK(std::abs(single.gates()[0].angle - 2.0 * 0.7 * 0.3) < 1e-12);

  PauliSum hxx(2);
  hxx.accumulate(PauliTerm::from_letters("XX"), 0.45);
  hxx.canonicalize();
  const double tau = 0.21;
  const Circuit c = synth_trotter_step(hxx, tau);
  const double theta = 0.45 * tau;
  const Eigen::MatrixXcd p = to_dense(hxx) / 0.45;
  const Eigen::MatrixXcd expected =
      std::cos(theta) * Eigen::MatrixXcd::Identity(4, 4) -
      kImag * std::sin(theta) * p;
  CHECK(max_abs_diff(unitary_of(c), expected) < 1e-10);
}

TEST_CASE("trotter step over several terms is the ordered product") {
  Xoshiro256 rng(13);
  const PauliSum h = random_sum(3, 5, rng, /*hermitian=*/true);
  const double tau = 0.17;
  const Circuit c = synth_trotter_step(h, tau);
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(8, 8);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double theta = h.entries()[i].coeff.real() * tau;
    const Eigen::MatrixXcd p = to_dense(h.term_at(i));
    const Eigen::MatrixXcd factor =
        std::cos(theta) * Eigen::MatrixXcd::Identity(8, 8) -
        kImag * std::sin(theta) * p;
    expected = factor * expected;
  }
  CHECK(max_abs_diff(unitary_of(c), expected) < 1e-10);
}

TEST_CASE("trotter rejects non-Hermitian operators") {
  PauliSum h(1);
  h.accumulate(PauliTerm::from_letters("X"), Complex(0, 1));
  h.canonicalize();
  CHECK_THROWS_AS(synth_trotter_step(h, 0.1), std::invalid_argument);
}

TEST_CASE("cost models evaluate the closed forms") {
  CHECK(multiplexor_cost(4, 5) == 169);
  CHECK(unary_iteration_cost(4, 5) == 8 * 37 - 31);
  CHECK(multiplexor_cost(4, 20) == 16 * 41 - 22);
  CHECK(unary_iteration_cost(4, 20) == 8 * 97 - 31);
  CHECK(multiplexor_cost(4, 13) == 16 * 27 - 15);
  CHECK(unary_iteration_cost(4, 13) == 8 * 69 - 31);
  CHECK_THROWS_AS(unary_iteration_cost(1, 5), std::invalid_argument);
}

TEST_CASE("cost crossover sweep against the literal formulas") {
  // With the literal expressions the multiplexor is cheaper iff
  // n > 29 - 15 * 2^{k-1}, which holds for every n >= 1 once k >= 2.
  for (int k = 2; k <= 8; ++k) {
    for (int n = 1; n <= 40; ++n) {
      const bool mux_cheaper = multiplexor_cost(k, n) < unary_iteration_cost(k, n);
      const bool predicted = n > 29 - 15 * (1 << (k - 1));
      CHECK(mux_cheaper == predicted);
      CHECK(mux_cheaper);
    }
  }
}

TEST_CASE("synthesis is deterministic") {
  Xoshiro256 rng(999);
  const PauliSum y = random_sum(3, 7, rng);
  const Circuit a = synth_lcu(y);
  const Circuit b = synth_lcu(y);
  CHECK(export_qasm(a.lower_u2x2()) == export_qasm(b.lower_u2x2()));
}
