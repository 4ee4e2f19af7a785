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

#include "lcu/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "lcu/errors.hpp"
#include "lcu/sim.hpp"

namespace lcu {

namespace {

const Complex kI(0.0, 1.0);
constexpr double kZeroTol = 1e-12;
constexpr int kMaxTaylorOrder = 20;

std::vector<std::uint64_t> support_indices(const StateVector& psi) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < psi.amps.size(); ++i) {
    if (std::abs(psi.amps[i]) > 1e-14) out.push_back(i);
  }
  return out;
}

}  // namespace

void TaylorConfig::validate() const {
  if (order < 0) throw std::invalid_argument("Taylor order must be >= 0");
  if (order > kMaxTaylorOrder) {
    throw GuardViolation("Taylor order above double-precision usefulness (K <= 20)");
  }
  if (segments < 1) throw std::invalid_argument("segment count must be >= 1");
  if (eps_term < 0) throw std::invalid_argument("negative eps_term");
  if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
}

PauliSum taylor_segment(const PauliSum& h, const TaylorConfig& cfg) {
  cfg.validate();
  PauliSum acc = PauliSum::identity(h.n_qubits());
  PauliSum cur = PauliSum::identity(h.n_qubits());
  for (int k = 1; k <= cfg.order; ++k) {
    cur = sum_multiply(cur, scale(h, -kI * (cfg.tau / static_cast<double>(k))));
    acc = add(acc, cur);
  }
  return truncate(acc, cfg.eps_term);
}

PauliSum collapse_propagator(const PauliSum& h, const TaylorConfig& cfg) {
  const PauliSum segment = taylor_segment(h, cfg);
  if (cfg.segments == 1) return segment;
  return truncate(sum_power(segment, cfg.segments, cfg.eps_term), cfg.eps_term);
}

double precision(const PauliSum& y, const StateVector& psi0) {
  if (y.n_qubits() != psi0.n_qubits) throw std::invalid_argument("dimension mismatch");
  const PauliSum ydy = sum_multiply(adjoint(y), y);
  const double val = expectation(ydy, psi0).real();
  return std::abs(1.0 - std::sqrt(std::max(0.0, val)));
}

SplitOperator preselect(const PauliSum& y, const StateVector& psi0) {
  if (y.n_qubits() != psi0.n_qubits) throw std::invalid_argument("dimension mismatch");
  SplitOperator out{PauliSum(y.n_qubits()), PauliSum(y.n_qubits()), 0.0, 0.0};
  for (std::size_t i = 0; i < y.size(); ++i) {
    const auto& e = y.entries()[i];
    const Complex ev = expectation(y.term_at(i), psi0);
    if (std::abs(ev) > kZeroTol) {
      out.parallel.accumulate(e.x, e.z, e.coeff);
    } else {
      out.perpendicular.accumulate(e.x, e.z, e.coeff);
    }
  }
  out.parallel.canonicalize();
  out.perpendicular.canonicalize();
  out.l1_parallel = l1_norm(out.parallel);
  out.l1_full = l1_norm(y);
  return out;
}

PauliSum merge_parallel_terms(const SplitOperator& split, const StateVector& psi0) {
  const PauliSum& par = split.parallel;
  if (par.n_qubits() != psi0.n_qubits) throw std::invalid_argument("dimension mismatch");
  const std::vector<std::uint64_t> support = support_indices(psi0);
  if (support.empty()) throw std::invalid_argument("zero initial state");

  // Signature: images of the support states plus phases relative to the
  // first one; the leading phase is folded into the coefficient.
  struct Group {
    std::size_t representative;
    Complex coeff;
    Complex rep_lead_phase;
  };
  std::map<std::string, Group> groups;
  for (std::size_t i = 0; i < par.size(); ++i) {
    const PauliTerm t = par.term_at(i);
    const Complex c = par.entries()[i].coeff;
    std::vector<std::pair<std::uint64_t, Complex>> action;
    action.reserve(support.size());
    for (std::uint64_t b : support) {
      const auto [ph, img] = term_apply_basis(t, b);
      action.emplace_back(img, ph);
    }
    const Complex lead = action[0].second;
    std::ostringstream key;
    for (const auto& [img, ph] : action) {
      const Complex rel = ph / lead;
      key << img << ':' << std::llround(rel.real() * 1e10) << ','
          << std::llround(rel.imag() * 1e10) << ';';
    }
    auto it = groups.find(key.str());
    if (it == groups.end()) {
      groups.emplace(key.str(), Group{i, c, lead});
    } else {
      it->second.coeff += c * (lead / it->second.rep_lead_phase);
    }
  }
  PauliSum out(par.n_qubits());
  for (const auto& [key, grp] : groups) {
    if (std::abs(grp.coeff) <= 1e-14) continue;
    const auto& e = par.entries()[grp.representative];
    out.accumulate(e.x, e.z, grp.coeff);
  }
  out.canonicalize();
  return out;
}

double reduced_overlap_reconstruct(double sq_overlap_par, double p_par,
                                   double l1_par, double denom) {
  if (sq_overlap_par < 0 || p_par < 0 || l1_par < 0) {
    throw std::invalid_argument("probabilities and norms must be nonnegative");
  }
  if (denom <= 0) throw std::domain_error("denominator must be positive");
  return (p_par * l1_par * l1_par / denom) * sq_overlap_par;
}

std::string PropagatorRecord::to_json() const {
  std::ostringstream out;
  out.precision(12);
  out << "{\"t\": " << t << ", \"n_terms_full\": " << n_terms_full
      << ", \"n_terms_parallel\": " << n_terms_parallel
      << ", \"l1_full\": " << l1_full << ", \"l1_parallel\": " << l1_parallel
      << ", \"precision\": " << precision << "}";
  return out.str();
}

}  // namespace lcu
