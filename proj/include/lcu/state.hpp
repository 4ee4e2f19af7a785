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
#include <cstdint>
#include <string>
#include <vector>

namespace lcu {

// Dense amplitudes over 2^n basis states. Qubit 0 is the most significant
// bit of the basis index, matching left-to-right ket strings like |01011>.
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(int n_qubits);
  static StateVector basis_state(int n_qubits, std::uint64_t index);
  static StateVector from_bitstring(const std::string& bits);

  double norm() const;
  void normalize();
};

}  // namespace lcu
