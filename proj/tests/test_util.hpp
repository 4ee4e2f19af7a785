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
#include <string>

#include <Eigen/Dense>

#include "lcu/pauli.hpp"
#include "lcu/rng.hpp"
#include "lcu/state.hpp"

namespace lcu::test {

inline std::string fixture_path(const std::string& rel) {
  return std::string(LCU_SOURCE_DIR) + "/" + rel;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline PauliSum random_sum(int n_qubits, std::size_t n_terms, Xoshiro256& rng,
                           bool hermitian = false) {
  PauliSum s(n_qubits);
  const std::uint64_t mask = (1ull << n_qubits) - 1;
  for (std::size_t i = 0; i < n_terms; ++i) {
    const double re = 2.0 * rng.next_double() - 1.0;
    const double im = hermitian ? 0.0 : 2.0 * rng.next_double() - 1.0;
    s.accumulate(rng.next_u64() & mask, rng.next_u64() & mask, Complex(re, im));
  }
  s.canonicalize();
  return s;
}

inline PauliTerm random_term(int n_qubits, Xoshiro256& rng) {
  const std::uint64_t mask = (1ull << n_qubits) - 1;
  static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return PauliTerm{n_qubits, rng.next_u64() & mask, rng.next_u64() & mask,
                   phases[rng.next_u64() & 3]};
}

// Haar-ish random unitary from QR of a complex Gaussian-ish matrix.
inline Eigen::Matrix2cd random_u2(Xoshiro256& rng) {
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      m(i, j) = Complex(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
    }
  }
  const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  Eigen::Matrix2cd q = qr.householderQ();
  Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < 2; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 1e-14) q.col(i) *= d / std::abs(d);
  }
  return q;
}

inline StateVector random_state(int n_qubits, Xoshiro256& rng) {
  StateVector psi = StateVector::zero_state(n_qubits);
  for (auto& a : psi.amps) {
    a = Complex(2.0 * rng.next_double() - 1.0, 2.0 * rng.next_double() - 1.0);
  }
  psi.normalize();
  return psi;
}

}  // namespace lcu::test
