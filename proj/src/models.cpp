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

#include "lcu/models.hpp"

#include <cmath>
#include <stdexcept>

namespace lcu {

namespace {

const Complex kI(0.0, 1.0);

// |row_bit><col_bit| on one qubit as a two-term Pauli sum.
PauliSum bit_matrix_unit(int row_bit, int col_bit) {
  PauliSum s(1);
  const PauliTerm i1 = PauliTerm::from_letters("I");
  const PauliTerm x = PauliTerm::from_letters("X");
  const PauliTerm y = PauliTerm::from_letters("Y");
  const PauliTerm z = PauliTerm::from_letters("Z");
  if (row_bit == 0 && col_bit == 0) {
    s.accumulate(i1, 0.5);
    s.accumulate(z, 0.5);
  } else if (row_bit == 1 && col_bit == 1) {
    s.accumulate(i1, 0.5);
    s.accumulate(z, -0.5);
  } else if (row_bit == 0 && col_bit == 1) {
    s.accumulate(x, 0.5);
    s.accumulate(y, kI * 0.5);
  } else {
    s.accumulate(x, 0.5);
    s.accumulate(y, -kI * 0.5);
  }
  s.canonicalize();
  return s;
}

// |row><col| over the boson register (register-local qubit indices).
PauliSum register_matrix_unit(std::uint64_t row, std::uint64_t col, int nq) {
  PauliSum out = PauliSum::identity(0);
  for (int q = 0; q < nq; ++q) {
    const int rb = static_cast<int>((row >> (nq - 1 - q)) & 1u);
    const int cb = static_cast<int>((col >> (nq - 1 - q)) & 1u);
    out = tensor(out, bit_matrix_unit(rb, cb));
  }
  return out;
}

// Embeds a local operator onto the given contiguous qubit offset of an
// n-qubit register.
PauliSum embed_at(const PauliSum& local, int offset, int n) {
  PauliSum out(n);
  for (std::size_t i = 0; i < local.size(); ++i) {
    const auto& e = local.entries()[i];
    out.accumulate(e.x << offset, e.z << offset, e.coeff);
  }
  out.canonicalize();
  return out;
}

PauliSum atom_sigma_plus() {
  // sigma+ = |e><g| = |0><1|
  return bit_matrix_unit(0, 1);
}

PauliSum atom_sigma_minus() { return bit_matrix_unit(1, 0); }

PauliSum atom_excited_projector() { return bit_matrix_unit(0, 0); }

}  // namespace

int BosonEncoding::n_qubits() const {
  int q = 0;
  while ((1 << q) < n_levels) ++q;
  return q;
}

std::uint64_t BosonEncoding::fock_index(int n) const {
  const int nq = n_qubits();
  std::uint64_t idx = 0;
  for (int p = 0; p < nq; ++p) {
    const std::uint64_t bit = (static_cast<std::uint64_t>(n) >> p) & 1u;
    const int q = bit_order == BitOrder::LittleEndian ? p : nq - 1 - p;
    idx |= bit << (nq - 1 - q);
  }
  return idx;
}

void BosonEncoding::validate() const {
  if (n_levels < 2) throw std::invalid_argument("boson encoding needs >= 2 levels");
  if ((1 << n_qubits()) < n_levels) throw std::logic_error("encoding size bug");
}

PauliSum encode_boson_op(BosonOpKind kind, const BosonEncoding& enc) {
  enc.validate();
  const int nq = enc.n_qubits();
  PauliSum out(nq);
  if (kind == BosonOpKind::Number) {
    for (int n = 1; n < enc.n_levels; ++n) {
      const std::uint64_t idx = enc.fock_index(n);
      const PauliSum unit = register_matrix_unit(idx, idx, nq);
      for (const auto& e : unit.entries()) {
        out.accumulate(e.x, e.z, e.coeff * static_cast<double>(n));
      }
    }
    out.canonicalize();
    return out;
  }
  for (int n = 0; n + 1 < enc.n_levels; ++n) {
    const double amp = std::sqrt(static_cast<double>(n + 1));
    const std::uint64_t lo = enc.fock_index(n);
    const std::uint64_t hi = enc.fock_index(n + 1);
    const PauliSum unit = kind == BosonOpKind::Annihilate
                              ? register_matrix_unit(lo, hi, nq)
                              : register_matrix_unit(hi, lo, nq);
    for (const auto& e : unit.entries()) out.accumulate(e.x, e.z, e.coeff * amp);
  }
  out.canonicalize();
  return out;
}

double ModelSpec::theta() const {
  return 0.5 * std::atan2(2.0 * g, delta());
}

void ModelSpec::validate() const {
  if (!std::isfinite(omega_c) || !std::isfinite(omega_a) || !std::isfinite(g) ||
      !std::isfinite(j_hop)) {
    throw std::invalid_argument("model couplings must be finite");
  }
  if (max_photons < 1) throw std::invalid_argument("max_photons must be >= 1");
  if (model == ModelKind::RabiHubbard && n_cavities < 2) {
    throw std::invalid_argument("Rabi-Hubbard needs at least 2 cavities");
  }
  if (model == ModelKind::JaynesCummings &&
      (n_start < 0 || n_start > max_photons)) {
    throw std::invalid_argument("JC initial photon number out of range");
  }
}

int jc_qubit_count(const ModelSpec& spec) {
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::LittleEndian};
  return enc.n_qubits() + 1;
}

int rh_qubit_count(const ModelSpec& spec) {
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::BigEndian};
  return (enc.n_qubits() + 1) * spec.n_cavities;
}

PauliSum build_jc_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  if (spec.model != ModelKind::JaynesCummings) {
    throw std::invalid_argument("spec is not a Jaynes-Cummings model");
  }
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::LittleEndian};
  const int nb = enc.n_qubits();
  const PauliSum b = encode_boson_op(BosonOpKind::Annihilate, enc);
  const PauliSum bdag = encode_boson_op(BosonOpKind::Create, enc);
  const PauliSum nhat = encode_boson_op(BosonOpKind::Number, enc);
  PauliSum z_atom(1);
  z_atom.accumulate(PauliTerm::from_letters("Z"), 1.0);
  z_atom.canonicalize();

  PauliSum h = scale(tensor(nhat, PauliSum::identity(1)), spec.omega_c);
  h = add(h, scale(tensor(PauliSum::identity(nb), z_atom), 0.5 * spec.omega_a));
  h = add(h, scale(add(tensor(b, atom_sigma_plus()), tensor(bdag, atom_sigma_minus())),
                   spec.g));
  return h;
}

PauliSum build_rh_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  if (spec.model != ModelKind::RabiHubbard) {
    throw std::invalid_argument("spec is not a Rabi-Hubbard model");
  }
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::BigEndian};
  const int nb = enc.n_qubits();
  const int per = nb + 1;
  const int n = per * spec.n_cavities;
  const PauliSum b = encode_boson_op(BosonOpKind::Annihilate, enc);
  const PauliSum bdag = encode_boson_op(BosonOpKind::Create, enc);
  const PauliSum nhat = encode_boson_op(BosonOpKind::Number, enc);
  PauliSum x_atom(1);
  x_atom.accumulate(PauliTerm::from_letters("X"), 1.0);
  x_atom.canonicalize();

  // site layout [atom, boson_hi, boson_lo]
  const PauliSum site_n = tensor(PauliSum::identity(1), nhat);
  const PauliSum site_exc = tensor(atom_excited_projector(), PauliSum::identity(nb));
  const PauliSum site_coupling = tensor(x_atom, add(b, bdag));
  const PauliSum site_b = tensor(PauliSum::identity(1), b);
  const PauliSum site_bdag = tensor(PauliSum::identity(1), bdag);

  PauliSum h(n);
  for (int i = 0; i < spec.n_cavities; ++i) {
    const int off = per * i;
    h = add(h, embed_at(scale(site_n, spec.omega_c), off, n));
    h = add(h, embed_at(scale(site_exc, spec.omega_a), off, n));
    h = add(h, embed_at(scale(site_coupling, spec.g), off, n));
  }
  for (int i = 0; i + 1 < spec.n_cavities; ++i) {
    const PauliSum bi = embed_at(site_b, per * i, n);
    const PauliSum bi_dag = embed_at(site_bdag, per * i, n);
    const PauliSum bj = embed_at(site_b, per * (i + 1), n);
    const PauliSum bj_dag = embed_at(site_bdag, per * (i + 1), n);
    const PauliSum hop = add(sum_multiply(bi, bj_dag), sum_multiply(bi_dag, bj));
    h = add(h, scale(hop, -spec.j_hop));
  }
  return h;
}

std::uint64_t jc_basis_index(const ModelSpec& spec, int photons, bool excited) {
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::LittleEndian};
  const std::uint64_t b = enc.fock_index(photons);
  return (b << 1) | (excited ? 0u : 1u);
}

StateVector build_initial_state(const ModelSpec& spec) {
  spec.validate();
  if (spec.model == ModelKind::JaynesCummings) {
    return StateVector::basis_state(jc_qubit_count(spec),
                                    jc_basis_index(spec, spec.n_start, false));
  }
  if (spec.n_cavities != 2) {
    throw std::invalid_argument(
        "tapered initial state is defined for the 2-cavity experiment");
  }
  const double th = spec.theta();
  const double c = std::cos(th), s = std::sin(th);
  StateVector psi = StateVector::zero_state(5);
  psi.amps[0b01011] = c * c;
  psi.amps[0b00000] = s * s;
  psi.amps[0b01000] = -c * s;
  psi.amps[0b00011] = -c * s;
  return psi;
}

StateVector build_mott_state(const ModelSpec& spec) {
  spec.validate();
  if (spec.model != ModelKind::RabiHubbard) {
    throw std::invalid_argument("Mott state is a Rabi-Hubbard construct");
  }
  const BosonEncoding enc{spec.max_photons + 1, BitOrder::BigEndian};
  const int nb = enc.n_qubits();
  const int per = nb + 1;
  const double th = spec.theta();
  // per site: cos th |0_b, e> - sin th |1_b, g>, layout [atom, b_hi, b_lo]
  const std::uint64_t site_e = enc.fock_index(0);            // atom bit 0 (e)
  const std::uint64_t site_g = (1ull << nb) | enc.fock_index(1);
  StateVector psi = StateVector::zero_state(per * spec.n_cavities);
  const std::uint64_t n_patterns = 1ull << spec.n_cavities;
  for (std::uint64_t pattern = 0; pattern < n_patterns; ++pattern) {
    double amp = 1.0;
    std::uint64_t idx = 0;
    for (int i = 0; i < spec.n_cavities; ++i) {
      const bool ground = (pattern >> i) & 1u;
      amp *= ground ? -std::sin(th) : std::cos(th);
      idx = (idx << per) | (ground ? site_g : site_e);
    }
    psi.amps[idx] = amp;
  }
  return psi;
}

}  // namespace lcu
