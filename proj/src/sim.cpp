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

#include "lcu/sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lcu/errors.hpp"
#include "lcu/rng.hpp"
#include "lcu/synth.hpp"

namespace lcu {

namespace {

const Complex kI(0.0, 1.0);

// Below this size the parallel-for overhead dominates.
constexpr int kParallelThresholdQubits = 13;

void check_dims(const Circuit& c, const StateVector& psi) {
  if (c.n_qubits() != psi.n_qubits) {
    throw std::invalid_argument("circuit/state dimension mismatch");
  }
  if (psi.amps.size() != (1ull << psi.n_qubits)) {
    throw std::invalid_argument("state vector has wrong length");
  }
}

template <bool Parallel>
void apply_single(std::vector<Complex>& a, const Eigen::Matrix2cd& u, int q, int n) {
  const std::int64_t pairs = 1ll << (n - 1);
  const std::int64_t bit = 1ll << (n - 1 - q);
  const std::int64_t lo_mask = bit - 1;
  const Complex u00 = u(0, 0), u01 = u(0, 1), u10 = u(1, 0), u11 = u(1, 1);
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::int64_t i = ((p & ~lo_mask) << 1) | (p & lo_mask);
    const Complex a0 = a[static_cast<std::size_t>(i)];
    const Complex a1 = a[static_cast<std::size_t>(i | bit)];
    a[static_cast<std::size_t>(i)] = u00 * a0 + u01 * a1;
    a[static_cast<std::size_t>(i | bit)] = u10 * a0 + u11 * a1;
  }
}

template <bool Parallel>
void apply_cx(std::vector<Complex>& a, int control, int target, int n) {
  const std::int64_t pairs = 1ll << (n - 1);
  const std::int64_t cbit = 1ll << (n - 1 - control);
  const std::int64_t tbit = 1ll << (n - 1 - target);
  const std::int64_t lo_mask = tbit - 1;
#pragma omp parallel for schedule(static) if (Parallel)
  for (std::int64_t p = 0; p < pairs; ++p) {
    const std::int64_t i = ((p & ~lo_mask) << 1) | (p & lo_mask);
    if (i & cbit) {
      std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(i | tbit)]);
    }
  }
}

template <bool Parallel>
StateVector run_impl(const Circuit& c, const StateVector& psi_in) {
  check_dims(c, psi_in);
  if (c.has_measure()) {
    throw std::invalid_argument("run: circuit contains measurements");
  }
  StateVector psi = psi_in;
  const int n = c.n_qubits();
  for (const Gate& g : c.gates()) {
    if (g.kind == GateKind::Cx) {
      apply_cx<Parallel>(psi.amps, g.qubits[0], g.qubits[1], n);
    } else {
      apply_single<Parallel>(psi.amps, gate_matrix_2x2(g), g.qubits[0], n);
    }
  }
  if (c.global_phase() != 0.0) {
    const Complex ph = std::exp(kI * c.global_phase());
    for (Complex& v : psi.amps) v *= ph;
  }
  return psi;
}

}  // namespace

StateVector StateVector::zero_state(int n_qubits) {
  return basis_state(n_qubits, 0);
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 30) {
    throw std::invalid_argument("state vector qubit count out of range");
  }
  StateVector s;
  s.n_qubits = n_qubits;
  s.amps.assign(1ull << n_qubits, 0.0);
  s.amps.at(index) = 1.0;
  return s;
}

StateVector StateVector::from_bitstring(const std::string& bits) {
  std::uint64_t idx = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw std::invalid_argument("bad bitstring");
    idx = (idx << 1) | static_cast<std::uint64_t>(b - '0');
  }
  return basis_state(static_cast<int>(bits.size()), idx);
}

double StateVector::norm() const {
  double s = 0;
  for (const Complex& v : amps) s += std::norm(v);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double nrm = norm();
  if (nrm == 0) throw std::invalid_argument("cannot normalize zero vector");
  for (Complex& v : amps) v /= nrm;
}

StateVector run(const Circuit& c, const StateVector& psi_in) {
  if (c.n_qubits() >= kParallelThresholdQubits) {
    return run_impl<true>(c, psi_in);
  }
  return run_impl<false>(c, psi_in);
}

namespace reference {
StateVector run(const Circuit& c, const StateVector& psi_in) {
  return run_impl<false>(c, psi_in);
}
}  // namespace reference

std::pair<double, std::optional<StateVector>> postselect_zero(
    const StateVector& psi, const std::vector<int>& register_qubits) {
  std::uint64_t mask = 0;
  for (int q : register_qubits) {
    if (q < 0 || q >= psi.n_qubits) throw std::invalid_argument("register qubit out of range");
    mask |= 1ull << (psi.n_qubits - 1 - q);
  }
  double p = 0;
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    if ((i & mask) == 0) p += std::norm(psi.amps[i]);
  }
  if (p <= 0) return {0.0, std::nullopt};
  StateVector out;
  out.n_qubits = psi.n_qubits;
  out.amps.assign(psi.amps.size(), 0.0);
  const double inv = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    if ((i & mask) == 0) out.amps[i] = psi.amps[i] * inv;
  }
  return {p, out};
}

Complex expectation(const PauliTerm& t, const StateVector& psi) {
  if (t.n_qubits != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
  Complex v = 0;
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    if (psi.amps[i] == Complex(0.0)) continue;
    auto [ph, out] = term_apply_basis(t, i);
    v += std::conj(psi.amps[out]) * ph * psi.amps[i];
  }
  return v;
}

Complex expectation(const PauliSum& a, const StateVector& psi) {
  Complex v = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    v += a.entries()[i].coeff * expectation(a.term_at(i), psi);
  }
  return v;
}

StateVector apply_pauli_sum(const PauliSum& a, const StateVector& psi) {
  if (a.n_qubits() != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
  StateVector out;
  out.n_qubits = psi.n_qubits;
  out.amps.assign(psi.amps.size(), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const PauliTerm t = a.term_at(k);
    const Complex c = a.entries()[k].coeff;
    for (std::size_t i = 0; i < psi.amps.size(); ++i) {
      if (psi.amps[i] == Complex(0.0)) continue;
      auto [ph, o] = term_apply_basis(t, i);
      out.amps[o] += c * ph * psi.amps[i];
    }
  }
  return out;
}

double lcu_success_probability(const PauliSum& y, const StateVector& psi) {
  if (y.n_qubits() != psi.n_qubits) throw std::invalid_argument("dimension mismatch");
  const StateVector ypsi = apply_pauli_sum(y, psi);
  double num = 0;
  for (const Complex& v : ypsi.amps) num += std::norm(v);
  const double l1 = l1_norm(y);
  if (l1 == 0) return 0.0;
  return num / (l1 * l1);
}

namespace {

Circuit vacuum_test_circuit(const PauliSum& y_par, const StateVector& psi0,
                            int& n_anc_out) {
  const Circuit uprep = synth_state_prep(psi0);
  const Circuit lcu = synth_lcu(y_par);
  const int n_sys = psi0.n_qubits;
  const int n_anc = lcu.n_qubits() - n_sys;
  n_anc_out = n_anc;
  Circuit full(lcu.n_qubits());
  for (const Gate& g : uprep.gates()) {
    Gate shifted = g;
    for (int& q : shifted.qubits) q += n_anc;
    full.add(std::move(shifted));
  }
  full.add_phase(uprep.global_phase());
  full.append(lcu);
  const Circuit udag = uprep.adjoint();
  for (const Gate& g : udag.gates()) {
    Gate shifted = g;
    for (int& q : shifted.qubits) q += n_anc;
    full.add(std::move(shifted));
  }
  full.add_phase(udag.global_phase());
  return full;
}

}  // namespace

std::pair<double, double> vacuum_test(const PauliSum& y_par,
                                      const StateVector& psi0) {
  int n_anc = 0;
  const Circuit full = vacuum_test_circuit(y_par, psi0, n_anc);
  const StateVector out = run(full, StateVector::zero_state(full.n_qubits()));
  std::vector<int> anc(static_cast<std::size_t>(n_anc));
  for (int i = 0; i < n_anc; ++i) anc[static_cast<std::size_t>(i)] = i;
  const auto [p_par, projected] = postselect_zero(out, anc);
  if (p_par <= 0) return {0.0, 0.0};
  const double joint = std::norm(out.amps[0]);
  return {p_par, joint / p_par};
}

std::pair<double, double> vacuum_test_sampled(const PauliSum& y_par,
                                              const StateVector& psi0,
                                              std::uint64_t shots,
                                              std::uint64_t seed) {
  int n_anc = 0;
  const Circuit full = vacuum_test_circuit(y_par, psi0, n_anc);
  const ShotResult res = sample(full, shots, seed);
  std::uint64_t anc_zero = 0, all_zero = 0;
  for (const auto& [bits, count] : res.counts) {
    if (bits.compare(0, static_cast<std::size_t>(n_anc), std::string(static_cast<std::size_t>(n_anc), '0')) == 0) {
      anc_zero += count;
      if (bits.find('1') == std::string::npos) all_zero += count;
    }
  }
  if (anc_zero == 0) return {0.0, 0.0};
  return {static_cast<double>(anc_zero) / static_cast<double>(shots),
          static_cast<double>(all_zero) / static_cast<double>(anc_zero)};
}

ShotResult sample(const Circuit& c, std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  Circuit unitary_part(c.n_qubits());
  for (const Gate& g : c.gates()) {
    if (g.kind != GateKind::Measure) unitary_part.add(g);
  }
  unitary_part.add_phase(c.global_phase());
  const StateVector out = run(unitary_part, StateVector::zero_state(c.n_qubits()));
  std::vector<double> cdf(out.amps.size());
  double acc = 0;
  for (std::size_t i = 0; i < out.amps.size(); ++i) {
    acc += std::norm(out.amps[i]);
    cdf[i] = acc;
  }
  Xoshiro256 rng(seed);
  std::vector<std::uint64_t> hist(out.amps.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.next_double() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t idx = std::min(static_cast<std::size_t>(it - cdf.begin()),
                                     out.amps.size() - 1);
    ++hist[idx];
  }
  ShotResult res;
  res.total = shots;
  res.seed = seed;
  const int n = c.n_qubits();
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] == 0) continue;
    std::string bits(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
      if ((i >> (n - 1 - q)) & 1u) bits[static_cast<std::size_t>(q)] = '1';
    }
    res.counts[bits] = hist[i];
  }
  return res;
}

std::string ShotResult::to_json() const {
  std::ostringstream out;
  out << "{\"seed\": " << seed << ", \"shots\": " << total << ", \"counts\": {";
  bool first = true;
  for (const auto& [bits, count] : counts) {
    if (!first) out << ", ";
    first = false;
    out << "\"" << bits << "\": " << count;
  }
  out << "}}";
  return out.str();
}

StateVector dense_expm_reference(const PauliSum& h, double t,
                                 const StateVector& psi0) {
  if (h.n_qubits() != psi0.n_qubits) throw std::invalid_argument("dimension mismatch");
  const Eigen::MatrixXcd hd = to_dense(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hd);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const Eigen::VectorXcd psi = Eigen::Map<const Eigen::VectorXcd>(
      psi0.amps.data(), static_cast<std::int64_t>(psi0.amps.size()));
  Eigen::VectorXcd coeffs = es.eigenvectors().adjoint() * psi;
  for (std::int64_t i = 0; i < coeffs.size(); ++i) {
    coeffs(i) *= std::exp(-kI * es.eigenvalues()(i) * t);
  }
  const Eigen::VectorXcd out = es.eigenvectors() * coeffs;
  StateVector res;
  res.n_qubits = psi0.n_qubits;
  res.amps.assign(out.data(), out.data() + out.size());
  return res;
}

}  // namespace lcu
