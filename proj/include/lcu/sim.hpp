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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lcu/circuit.hpp"
#include "lcu/pauli.hpp"
#include "lcu/state.hpp"

namespace lcu {

struct ShotResult {
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

// Gate-by-gate application (unitary segment; measure gates rejected).
StateVector run(const Circuit& c, const StateVector& psi_in);

// p = sum |amp|^2 over basis states whose register bits are all zero, plus
// the renormalized projected state; p == 0 yields no state.
std::pair<double, std::optional<StateVector>> postselect_zero(
    const StateVector& psi, const std::vector<int>& register_qubits);

// <psi| P |psi> evaluated through the basis action of the string.
Complex expectation(const PauliTerm& t, const StateVector& psi);
Complex expectation(const PauliSum& a, const StateVector& psi);
StateVector apply_pauli_sum(const PauliSum& a, const StateVector& psi);

// p = <psi| Y^dag Y |psi> / |alpha|_1^2
double lcu_success_probability(const PauliSum& y, const StateVector& psi);

// Builds U_psi, LCU(Y_par), U_psi^dag and reads off (p_parallel,
// |<psi0|psi_f_par>|^2) from the exact outcome distribution.
std::pair<double, double> vacuum_test(const PauliSum& y_par,
                                      const StateVector& psi0);

// Same circuit, sampled with `shots` shots instead of exact probabilities.
std::pair<double, double> vacuum_test_sampled(const PauliSum& y_par,
                                              const StateVector& psi0,
                                              std::uint64_t shots,
                                              std::uint64_t seed);

// Multinomial draw from the exact outcome distribution of the circuit's
// final state; deterministic given the seed. Bitstrings are full-register,
// qubit 0 first.
ShotResult sample(const Circuit& c, std::uint64_t shots, std::uint64_t seed);

// exp(-iHt)|psi0> via dense eigendecomposition; the ground-truth oracle.
StateVector dense_expm_reference(const PauliSum& h, double t,
                                 const StateVector& psi0);

namespace reference {
// Serial gate application kept for testing and benchmarking.
StateVector run(const Circuit& c, const StateVector& psi_in);
}  // namespace reference

}  // namespace lcu
