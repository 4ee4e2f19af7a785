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

#include "lcu/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lcu/errors.hpp"

namespace lcu {

namespace {

using Eigen::Matrix2cd;
using Eigen::Vector2cd;
constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);
constexpr double kAngleTol = 1e-12;

bool is_unitary(const Matrix2cd& m, double tol = 1e-10) {
  return (m * m.adjoint() - Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

Matrix2cd pauli_matrix(char letter) {
  Matrix2cd m;
  switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -kI, kI, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("bad Pauli letter");
  }
  return m;
}

int ceil_log2(std::size_t v) {
  int k = 0;
  while ((std::size_t{1} << k) < v) ++k;
  return k;
}

// Gray-code control schedule: the cx after step i acts on the control whose
// bit flips between gray(i) and gray(i+1) (wrapping to the top bit).
int gray_control_bit(std::uint64_t step, int k) {
  if (step + 1 == (std::uint64_t{1} << k)) return k - 1;
  return std::countr_zero(step + 1);
}

// phi = 2^{-k} M alpha with M_{ij} = (-1)^{popcount(gray(i) & j)}.
std::vector<double> gray_transform(const std::vector<double>& angles, int k) {
  const std::uint64_t size = std::uint64_t{1} << k;
  std::vector<double> phi(size, 0.0);
  for (std::uint64_t i = 0; i < size; ++i) {
    const std::uint64_t g = i ^ (i >> 1);
    double acc = 0;
    for (std::uint64_t j = 0; j < size; ++j) {
      const int sign = std::popcount(g & j) & 1 ? -1 : 1;
      acc += sign * angles[j];
    }
    phi[i] = acc / static_cast<double>(size);
  }
  return phi;
}

Gate rotation_gate(RotationAxis axis, int q, double angle) {
  return axis == RotationAxis::Ry ? Gate::ry(q, angle) : Gate::rz(q, angle);
}

// Emits a multiplexed rotation with zero-angle rotations elided and the
// intervening cx gates XOR-merged. Trailing cx gates are emitted so the
// branch bookkeeping stays exact.
void emit_mux_rotation_elided(Circuit& c, RotationAxis axis,
                              const std::vector<double>& angles,
                              const std::vector<int>& controls, int target) {
  const int k = static_cast<int>(controls.size());
  if (angles.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("angle count must be 2^k");
  }
  if (k == 0) {
    if (std::abs(angles[0]) > kAngleTol) c.add(rotation_gate(axis, target, angles[0]));
    return;
  }
  const std::vector<double> phi = gray_transform(angles, k);
  std::uint64_t pending = 0;
  auto flush = [&] {
    for (int b = k - 1; b >= 0; --b) {
      if ((pending >> b) & 1u) c.add(Gate::cx(controls[static_cast<std::size_t>(k - 1 - b)], target));
    }
    pending = 0;
  };
  for (std::uint64_t i = 0; i < phi.size(); ++i) {
    if (std::abs(phi[i]) > kAngleTol) {
      flush();
      c.add(rotation_gate(axis, target, phi[i]));
    }
    pending ^= std::uint64_t{1} << gray_control_bit(i, k);
  }
  flush();
}

// Diagonal operator synthesis over the listed qubits: one multiplexed-rz per
// qubit (last qubit first) plus a global phase; at most 2^k - 2 cx after
// elision of an all-zero top level.
void emit_diagonal(Circuit& c, const std::vector<int>& qubits,
                   std::vector<Complex> entries) {
  int k = static_cast<int>(qubits.size());
  if (entries.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("diagonal entry count must be 2^k");
  }
  while (k > 0) {
    const std::size_t half = entries.size() / 2;
    std::vector<double> angles(half);
    std::vector<Complex> parent(half);
    for (std::size_t p = 0; p < half; ++p) {
      const Complex d0 = entries[2 * p], d1 = entries[2 * p + 1];
      const double theta = std::arg(d1 * std::conj(d0));
      angles[p] = theta;
      parent[p] = d0 * std::exp(kI * (theta / 2.0));
    }
    std::vector<int> controls(qubits.begin(), qubits.begin() + (k - 1));
    emit_mux_rotation_elided(c, RotationAxis::Rz, angles, controls,
                             qubits[static_cast<std::size_t>(k - 1)]);
    entries = std::move(parent);
    --k;
  }
  c.add_phase(std::arg(entries[0]));
}

// Accumulates the U(2)/cx ladder of one multiplexed-U(2) factor, fusing
// adjacent single-qubit gates on the target.
class MuxLadderBuilder {
 public:
  MuxLadderBuilder(Circuit& c, int target) : circuit_(c), target_(target) {}

  void push_1q(const Matrix2cd& m) { pending_ = m * pending_; }

  void push_cx(int control) {
    flush();
    circuit_.add(Gate::cx(control, target_));
  }

  void flush() {
    const Matrix2cd& m = pending_;
    const double off = std::abs(m(0, 1)) + std::abs(m(1, 0));
    if (off < kAngleTol && std::abs(m(0, 0) - m(1, 1)) < kAngleTol) {
      // phase * identity: fold into the global phase
      circuit_.add_phase(std::arg(m(0, 0)));
    } else {
      circuit_.add(Gate::u2x2(target_, m));
    }
    pending_ = Matrix2cd::Identity();
  }

 private:
  Circuit& circuit_;
  int target_;
  Matrix2cd pending_ = Matrix2cd::Identity();
};

// Recursive demultiplexing of a multiplexed-U(2). Emits the cx/U(2) ladder
// into the builder and returns the deferred diagonal over
// (controls..., target), indexed by (control_value << 1) | target_bit.
std::vector<Complex> demux_u2_rec(std::vector<Matrix2cd> targets,
                                  const std::vector<int>& controls,
                                  std::size_t c_begin, Circuit& circuit,
                                  MuxLadderBuilder& builder) {
  const int k = static_cast<int>(controls.size() - c_begin);
  if (k == 0) {
    builder.push_1q(targets[0]);
    return {1.0, 1.0};
  }
  const bool all_diagonal =
      std::all_of(targets.begin(), targets.end(), [](const Matrix2cd& v) {
        return std::abs(v(0, 1)) + std::abs(v(1, 0)) < kAngleTol;
      });
  if (all_diagonal) {
    std::vector<Complex> out(std::size_t{2} << k);
    for (std::size_t j = 0; j < targets.size(); ++j) {
      out[2 * j] = targets[j](0, 0);
      out[2 * j + 1] = targets[j](1, 1);
    }
    return out;
  }
  const bool all_equal = std::all_of(
      targets.begin() + 1, targets.end(), [&](const Matrix2cd& v) {
        return (v - targets[0]).cwiseAbs().maxCoeff() < kAngleTol;
      });
  if (all_equal) {
    builder.push_1q(targets[0]);
    return std::vector<Complex>(std::size_t{2} << k, 1.0);
  }
  const std::size_t half = std::size_t{1} << (k - 1);
  std::vector<Matrix2cd> lower(half), upper(half);
  std::vector<Vector2cd> r(half);
  for (std::size_t j = 0; j < half; ++j) {
    const DemuxStep step = demultiplex_pair(targets[j], targets[j + half]);
    lower[j] = step.l;
    upper[j] = step.w;
    r[j] = step.r;
  }
  const std::vector<Complex> d_lower =
      demux_u2_rec(std::move(lower), controls, c_begin + 1, circuit, builder);
  // e^{i pi/4 Z Z} rewritten as H-cx-H with the rz corrections deferred
  const Matrix2cd h = (pauli_matrix('X') + pauli_matrix('Z')) / std::sqrt(2.0);
  builder.push_1q(h);
  builder.push_cx(controls[c_begin]);
  builder.push_1q(h);
  circuit.add_phase(-kPi / 4.0);
  for (std::size_t j = 0; j < half; ++j) {
    Matrix2cd corr = Matrix2cd::Zero();
    corr(0, 0) = d_lower[2 * j] * std::exp(kI * (kPi / 4.0));
    corr(1, 1) = d_lower[2 * j + 1] * std::exp(-kI * (kPi / 4.0));
    upper[j] = (upper[j] * corr).eval();
  }
  const std::vector<Complex> d_upper =
      demux_u2_rec(std::move(upper), controls, c_begin + 1, circuit, builder);
  std::vector<Complex> out(std::size_t{2} << k);
  for (std::uint64_t m = 0; m < 2; ++m) {
    const Complex zz_rz = std::exp(kI * ((m ? 1.0 : -1.0) * (-kPi / 4.0)));
    for (std::size_t j = 0; j < half; ++j) {
      for (std::uint64_t b = 0; b < 2; ++b) {
        const Complex rv = m ? r[j](static_cast<int>(b))
                             : std::conj(r[j](static_cast<int>(b)));
        out[(m << k) | (j << 1) | b] = rv * zz_rz * d_upper[(j << 1) | b];
      }
    }
  }
  return out;
}

// Splits a (controls..., target) diagonal into multiplexed-rz angles on the
// target plus a residual control-register diagonal.
void split_target_diagonal(const std::vector<Complex>& diag,
                           std::vector<double>& rz_angles,
                           std::vector<Complex>& control_diag) {
  const std::size_t half = diag.size() / 2;
  rz_angles.assign(half, 0.0);
  control_diag.assign(half, 1.0);
  for (std::size_t l = 0; l < half; ++l) {
    const Complex d0 = diag[2 * l], d1 = diag[2 * l + 1];
    const double theta = std::arg(d1 * std::conj(d0));
    rz_angles[l] = theta;
    control_diag[l] = d0 * std::exp(kI * (theta / 2.0));
  }
}

bool any_angle(const std::vector<double>& angles) {
  return std::any_of(angles.begin(), angles.end(),
                     [](double a) { return std::abs(a) > kAngleTol; });
}

bool any_phase(const std::vector<Complex>& diag) {
  return std::any_of(diag.begin(), diag.end(), [](const Complex& d) {
    return std::abs(std::arg(d)) > kAngleTol;
  });
}

}  // namespace

void MultiplexorSpec::validate() const {
  const std::size_t k = control_qubits.size();
  if (targets.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("multiplexor needs exactly 2^k target unitaries");
  }
  for (const auto& m : targets) {
    if (!is_unitary(m)) throw std::invalid_argument("multiplexor target not unitary");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (control_qubits[i] == target_qubit) {
      throw std::invalid_argument("control equals target");
    }
    for (std::size_t j = i + 1; j < k; ++j) {
      if (control_qubits[i] == control_qubits[j]) {
        throw std::invalid_argument("duplicate control qubit");
      }
    }
  }
}

Eigen::Matrix2cd DemuxStep::d() {
  Matrix2cd m = Matrix2cd::Zero();
  m(0, 0) = std::exp(kI * (kPi / 4.0));
  m(1, 1) = std::exp(-kI * (kPi / 4.0));
  return m;
}

double DemuxStep::residual(const Matrix2cd& v0, const Matrix2cd& v1) const {
  Matrix2cd rm = Matrix2cd::Zero();
  rm(0, 0) = r(0);
  rm(1, 1) = r(1);
  const Matrix2cd rec0 = rm.adjoint() * w * d() * l;
  const Matrix2cd rec1 = rm * w * d().adjoint() * l;
  return (rec0 - v0).cwiseAbs().maxCoeff() + (rec1 - v1).cwiseAbs().maxCoeff();
}

DemuxStep demultiplex_pair(const Matrix2cd& v0, const Matrix2cd& v1) {
  if (!is_unitary(v0) || !is_unitary(v1)) {
    throw std::invalid_argument("demultiplex_pair: inputs must be unitary");
  }
  const Matrix2cd delta = v0 * v1.adjoint();
  const Complex det = delta(0, 0) * delta(1, 1) - delta(0, 1) * delta(1, 0);
  const double theta = std::arg(det);
  const Complex x0 = delta(0, 0) * std::exp(-kI * (theta / 2.0));
  const double arg_x0 = std::abs(x0) > 1e-14 ? std::arg(x0) : 0.0;
  DemuxStep step;
  step.r(0) = std::exp(kI * ((-arg_x0 - theta / 2.0 - kPi / 2.0) / 2.0));
  step.r(1) = std::exp(kI * ((arg_x0 - theta / 2.0 + kPi / 2.0) / 2.0));
  Matrix2cd m;
  m(0, 0) = step.r(0) * delta(0, 0) * step.r(0);
  m(0, 1) = step.r(0) * delta(0, 1) * step.r(1);
  m(1, 0) = step.r(1) * delta(1, 0) * step.r(0);
  m(1, 1) = step.r(1) * delta(1, 1) * step.r(1);
  // m is unitary with eigenvalues +/- i; the +i eigenvector forms W's first
  // column, phase-fixed so its largest-magnitude component is real positive.
  auto eigvec = [&](Complex lambda) {
    Vector2cd a(m(0, 1), lambda - m(0, 0));
    Vector2cd b(lambda - m(1, 1), m(1, 0));
    Vector2cd v = a.norm() >= b.norm() ? a : b;
    v.normalize();
    const int big = std::abs(v(0)) >= std::abs(v(1)) ? 0 : 1;
    v *= std::exp(-kI * std::arg(v(big)));
    return v;
  };
  const Vector2cd vp = eigvec(kI);
  Vector2cd vm(-std::conj(vp(1)), std::conj(vp(0)));
  const int big = std::abs(vm(0)) >= std::abs(vm(1)) ? 0 : 1;
  vm *= std::exp(-kI * std::arg(vm(big)));
  step.w.col(0) = vp;
  step.w.col(1) = vm;
  Matrix2cd rm = Matrix2cd::Zero();
  rm(0, 0) = step.r(0);
  rm(1, 1) = step.r(1);
  step.l = DemuxStep::d().adjoint() * step.w.adjoint() * rm * v0;
  return step;
}

Circuit synth_multiplexed_rotation(RotationAxis axis,
                                   const std::vector<double>& angles,
                                   const std::vector<int>& controls, int target,
                                   int n_qubits) {
  const int k = static_cast<int>(controls.size());
  if (angles.size() != (std::size_t{1} << k)) {
    throw std::invalid_argument("angle count must be 2^k");
  }
  Circuit c(n_qubits);
  if (k == 0) {
    c.add(rotation_gate(axis, target, angles[0]));
    return c;
  }
  const std::vector<double> phi = gray_transform(angles, k);
  for (std::uint64_t i = 0; i < phi.size(); ++i) {
    c.add(rotation_gate(axis, target, phi[i]));
    const int bit = gray_control_bit(i, k);
    c.add(Gate::cx(controls[static_cast<std::size_t>(k - 1 - bit)], target));
  }
  return c;
}

Circuit synth_multiplexed_u2(const MultiplexorSpec& spec) {
  spec.validate();
  int n = spec.target_qubit;
  for (int q : spec.control_qubits) n = std::max(n, q);
  Circuit c(n + 1);
  MuxLadderBuilder builder(c, spec.target_qubit);
  const std::vector<Complex> diag =
      demux_u2_rec(spec.targets, spec.control_qubits, 0, c, builder);
  builder.flush();
  std::vector<int> diag_qubits = spec.control_qubits;
  diag_qubits.push_back(spec.target_qubit);
  if (any_phase(diag)) emit_diagonal(c, diag_qubits, diag);
  return c;
}

Circuit synth_prepare(const std::vector<double>& weights) {
  if (weights.empty()) throw std::invalid_argument("empty weight list");
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("negative weight");
    total += w;
  }
  if (total <= 0) throw std::invalid_argument("all-zero weights");
  const int k = ceil_log2(weights.size());
  Circuit c(k);
  std::vector<double> mass(std::size_t{1} << k, 0.0);
  std::copy(weights.begin(), weights.end(), mass.begin());
  // Walk the binary split tree top-down; each level is one multiplexed-ry.
  for (int d = 0; d < k; ++d) {
    const std::size_t width = std::size_t{1} << d;
    const std::size_t slots = std::size_t{1} << (k - d - 1);  // leaves per child
    std::vector<double> angles(width, 0.0);
    for (std::size_t p = 0; p < width; ++p) {
      double m0 = 0, m1 = 0;
      for (std::size_t s = 0; s < slots; ++s) {
        m0 += mass[(2 * p) * slots + s];
        m1 += mass[(2 * p + 1) * slots + s];
      }
      if (m0 + m1 > 0) angles[p] = 2.0 * std::atan2(std::sqrt(m1), std::sqrt(m0));
    }
    std::vector<int> controls(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) controls[static_cast<std::size_t>(i)] = i;
    emit_mux_rotation_elided(c, RotationAxis::Ry, angles, controls, d);
  }
  const std::int64_t bound = (std::int64_t{1} << k) - 2;
  if (k >= 1 && two_qubit_count(c) > bound) {
    throw std::logic_error("prepare cx bound exceeded");
  }
  return c;
}

Circuit synth_select(const PauliSum& y, const std::vector<int>& control_qubits,
                     const std::vector<int>& system_qubits, int n_qubits) {
  const std::size_t l = y.size();
  const int k = static_cast<int>(control_qubits.size());
  const int n = static_cast<int>(system_qubits.size());
  if (l == 0) throw std::invalid_argument("empty operator");
  if (l > (std::size_t{1} << k)) {
    throw std::invalid_argument("term count exceeds 2^k control patterns");
  }
  if (y.n_qubits() != n) {
    throw std::invalid_argument("system register size mismatch");
  }
  Circuit c(n_qubits);
  const std::size_t slots = std::size_t{1} << k;
  std::vector<Complex> control_diag(slots, 1.0);
  for (int j = 0; j < n; ++j) {
    std::vector<Matrix2cd> targets(slots, Matrix2cd::Identity());
    for (std::size_t term = 0; term < l; ++term) {
      const Complex coeff = y.entries()[term].coeff;
      Matrix2cd m = pauli_matrix(y.term_at(term).letter_at(j));
      if (j == 0 && std::abs(coeff) > 0) m *= coeff / std::abs(coeff);
      targets[term] = m;
    }
    MuxLadderBuilder builder(c, system_qubits[static_cast<std::size_t>(j)]);
    const std::vector<Complex> diag =
        demux_u2_rec(std::move(targets), control_qubits, 0, c, builder);
    builder.flush();
    std::vector<double> rz_angles;
    std::vector<Complex> residual;
    split_target_diagonal(diag, rz_angles, residual);
    if (any_angle(rz_angles)) {
      emit_mux_rotation_elided(c, RotationAxis::Rz, rz_angles, control_qubits,
                               system_qubits[static_cast<std::size_t>(j)]);
    }
    for (std::size_t i = 0; i < slots; ++i) control_diag[i] *= residual[i];
  }
  if (any_phase(control_diag)) emit_diagonal(c, control_qubits, control_diag);
  if (two_qubit_count(c) > multiplexor_cost(k, n)) {
    throw std::logic_error("select cx bound exceeded");
  }
  return c;
}

Circuit synth_lcu(const PauliSum& y) {
  if (y.size() == 0) throw std::invalid_argument("empty operator");
  const int k = ceil_log2(y.size());
  const int n = y.n_qubits();
  std::vector<double> weights(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) weights[i] = std::abs(y.entries()[i].coeff);
  std::vector<int> anc(static_cast<std::size_t>(k));
  std::vector<int> sys(static_cast<std::size_t>(n));
  for (int i = 0; i < k; ++i) anc[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < n; ++i) sys[static_cast<std::size_t>(i)] = k + i;
  Circuit c(k + n);
  if (k > 0) {
    const Circuit prep = synth_prepare(weights);
    for (const Gate& g : prep.gates()) c.add(g);
    c.add_phase(prep.global_phase());
    c.append(synth_select(y, anc, sys, k + n));
    const Circuit unprep = prep.adjoint();
    for (const Gate& g : unprep.gates()) c.add(g);
    c.add_phase(unprep.global_phase());
  } else {
    c.append(synth_select(y, anc, sys, k + n));
  }
  return c;
}

Circuit synth_state_prep(const StateVector& psi) {
  const int n = psi.n_qubits;
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("state prep requires a unit-norm state");
  }
  std::vector<Complex> work = psi.amps;
  std::vector<std::vector<double>> rz_levels(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> ry_levels(static_cast<std::size_t>(n));
  for (int j = n - 1; j >= 0; --j) {
    const std::size_t prefixes = std::size_t{1} << j;
    std::vector<double> lambdas(prefixes, 0.0), thetas(prefixes, 0.0);
    for (std::size_t p = 0; p < prefixes; ++p) {
      const std::size_t i0 = p << (n - j);
      const std::size_t i1 = i0 | (std::size_t{1} << (n - 1 - j));
      const Complex u = work[i0], v = work[i1];
      const double au = std::abs(u), av = std::abs(v);
      if (au < 1e-15 && av < 1e-15) continue;
      double lambda = 0.0;
      if (av >= 1e-15 && au >= 1e-15) lambda = std::arg(u) - std::arg(v);
      const double theta = -2.0 * std::atan2(av, au);
      lambdas[p] = lambda;
      thetas[p] = theta;
      const Complex up = u * std::exp(-kI * (lambda / 2.0));
      const Complex vp = v * std::exp(kI * (lambda / 2.0));
      work[i0] = std::cos(theta / 2.0) * up - std::sin(theta / 2.0) * vp;
      work[i1] = 0.0;
    }
    rz_levels[static_cast<std::size_t>(j)] = std::move(lambdas);
    ry_levels[static_cast<std::size_t>(j)] = std::move(thetas);
  }
  Circuit c(n);
  c.add_phase(std::arg(work[0]));
  for (int j = 0; j < n; ++j) {
    std::vector<int> controls(static_cast<std::size_t>(j));
    for (int i = 0; i < j; ++i) controls[static_cast<std::size_t>(i)] = i;
    std::vector<double> ry = ry_levels[static_cast<std::size_t>(j)];
    std::vector<double> rz = rz_levels[static_cast<std::size_t>(j)];
    for (double& a : ry) a = -a;
    for (double& a : rz) a = -a;
    if (any_angle(ry)) emit_mux_rotation_elided(c, RotationAxis::Ry, ry, controls, j);
    if (any_angle(rz)) emit_mux_rotation_elided(c, RotationAxis::Rz, rz, controls, j);
  }
  return c;
}

Circuit synth_oaa(const PauliSum& y, int rounds) {
  if (rounds < 0) throw std::invalid_argument("negative round count");
  const Circuit w = synth_lcu(y);
  const int k = w.n_qubits() - y.n_qubits();
  Circuit c(w.n_qubits());
  c.append(w);
  if (rounds == 0) return c;
  const Circuit wdag = w.adjoint();
  auto add_reflection = [&] {
    // I - 2|0...0><0...0| on the ancilla register
    if (k == 0) {
      c.add_phase(kPi);
      return;
    }
    std::vector<Complex> entries(std::size_t{1} << k, 1.0);
    entries[0] = -1.0;
    std::vector<int> anc(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) anc[static_cast<std::size_t>(i)] = i;
    emit_diagonal(c, anc, entries);
  };
  for (int r = 0; r < rounds; ++r) {
    add_reflection();
    c.append(wdag);
    add_reflection();
    c.append(w);
    c.add_phase(kPi);
  }
  return c;
}

Circuit synth_trotter_step(const PauliSum& h, double tau) {
  for (const auto& e : h.entries()) {
    if (std::abs(e.coeff.imag()) > 1e-10) {
      throw std::invalid_argument("trotter step requires a Hermitian operator");
    }
  }
  const int n = h.n_qubits();
  Circuit c(n);
  for (std::size_t i = 0; i < h.size(); ++i) {
    const PauliTerm t = h.term_at(i);
    const double theta = h.entries()[i].coeff.real() * tau;
    std::vector<int> active;
    for (int q = 0; q < n; ++q) {
      if (t.letter_at(q) != 'I') active.push_back(q);
    }
    if (active.empty()) {
      c.add_phase(-theta);
      continue;
    }
    auto basis_in = [&](bool invert) {
      for (int q : active) {
        const char letter = t.letter_at(q);
        if (letter == 'X') c.add(Gate::h(q));
        if (letter == 'Y') c.add(Gate::rx(q, invert ? -kPi / 2.0 : kPi / 2.0));
      }
    };
    basis_in(false);
    for (std::size_t a = 0; a + 1 < active.size(); ++a) {
      c.add(Gate::cx(active[a], active[a + 1]));
    }
    c.add(Gate::rz(active.back(), 2.0 * theta));
    for (std::size_t a = active.size() - 1; a-- > 0;) {
      c.add(Gate::cx(active[a], active[a + 1]));
    }
    basis_in(true);
  }
  return c;
}

std::int64_t multiplexor_cost(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("negative register size");
  return (std::int64_t{1} << k) * (2 * std::int64_t{n} + 1) - n - 2;
}

std::int64_t unary_iteration_cost(int k, int n) {
  if (k < 2 || n < 1) {
    throw std::invalid_argument("unary iteration cost model needs k >= 2, n >= 1");
  }
  return (std::int64_t{1} << (k - 1)) * (4 * std::int64_t{n} + 17) - 31;
}

}  // namespace lcu
