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

#include "lcu/pauli.hpp"
#include "lcu/state.hpp"

namespace lcu {

enum class BitOrder { LittleEndian, BigEndian };

// Binary encoding of a truncated Fock space. little_endian: boson register
// qubit p holds bit p (the LSB first) of the occupation number.
struct BosonEncoding {
  int n_levels = 2;
  BitOrder bit_order = BitOrder::LittleEndian;

  int n_qubits() const;
  // Basis index of the boson register alone for occupation number n.
  std::uint64_t fock_index(int n) const;
  void validate() const;
};

enum class BosonOpKind { Annihilate, Create, Number };

// Pauli decomposition of the truncated ladder/number operator embedded into
// the 2^{n_qubits} register (rows and columns beyond n_levels are zero).
PauliSum encode_boson_op(BosonOpKind kind, const BosonEncoding& enc);

enum class ModelKind { JaynesCummings, RabiHubbard };

// Physical parameters in units of omega_c. The atom convention is
// e = |0>, g = |1> (sigma+ = |0><1|); the Rabi-Hubbard site layout is
// [atom, boson_hi, boson_lo].
struct ModelSpec {
  ModelKind model = ModelKind::RabiHubbard;
  double omega_c = 1.0;
  double omega_a = 1.1;
  double g = 0.1;
  double j_hop = 0.1;     // RH only
  int n_cavities = 2;     // RH only
  int max_photons = 2;    // Fock cutoff; n_levels = max_photons + 1
  int n_start = 4;        // JC initial photon number

  double delta() const { return omega_a - omega_c; }
  // Mott angle from tan(2 theta) = 2 g / delta.
  double theta() const;
  void validate() const;
};

PauliSum build_jc_hamiltonian(const ModelSpec& spec);

// Untapered Rabi-Hubbard over n_cavities sites, open chain hopping.
PauliSum build_rh_hamiltonian(const ModelSpec& spec);

// JC: the computational basis state |N, g>. RH: the tapered 5-qubit Mott
// state cos^2 t |01011> + sin^2 t |00000> - cos t sin t (|01000> + |00011>)
// used with a tapered Hamiltonian loaded from file (n_cavities must be 2).
StateVector build_initial_state(const ModelSpec& spec);

// Untapered Mott product state over all cavities, matching
// build_rh_hamiltonian's qubit layout.
StateVector build_mott_state(const ModelSpec& spec);

int jc_qubit_count(const ModelSpec& spec);
int rh_qubit_count(const ModelSpec& spec);

// Basis index of |N, g> under the JC register layout [boson..., atom].
std::uint64_t jc_basis_index(const ModelSpec& spec, int photons, bool excited);

}  // namespace lcu
