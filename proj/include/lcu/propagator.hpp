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
#include "lcu/pauli.hpp"
#include "lcu/state.hpp"

namespace lcu {

// Truncated-Taylor segmentation: exp(-iHt) ~ (segment(tau, K))^m, t = m tau.
struct TaylorConfig {
  int order = 8;           // K
  double tau = 0.05;       // segment width
  int segments = 1;        // m
  double eps_term = 1e-8;  // coefficient drop threshold

  void validate() const;
};

// sum_{k<=K} (-i tau)^k / k! H^k, truncated at eps_term.
PauliSum taylor_segment(const PauliSum& h, const TaylorConfig& cfg);

// (taylor_segment)^m with truncation at eps_term after each internal
// multiply; the result may not be unitary.
PauliSum collapse_propagator(const PauliSum& h, const TaylorConfig& cfg);

// |1 - sqrt(<psi0| Y^dag Y |psi0>)|
double precision(const PauliSum& y, const StateVector& psi0);

// Partition of Y by the expectation of each string in psi0.
struct SplitOperator {
  PauliSum parallel;       // <psi0|P|psi0> != 0
  PauliSum perpendicular;  // <psi0|P|psi0> == 0
  double l1_parallel = 0;
  double l1_full = 0;
};

SplitOperator preselect(const PauliSum& y, const StateVector& psi0);

// Groups parallel terms whose action on the support of psi0 agrees up to a
// unit scalar, folding the scalars into summed coefficients. Preserves
// Y_par |psi0> exactly; the representative of each group is the
// lexicographically smallest letters string.
PauliSum merge_parallel_terms(const SplitOperator& split, const StateVector& psi0);

// Eq-level reconstruction: (p_par * l1_par^2 / denom) * sq_overlap_par.
double reduced_overlap_reconstruct(double sq_overlap_par, double p_par,
                                   double l1_par, double denom);

// Per-time-point record emitted by the experiment drivers (JSON lines).
struct PropagatorRecord {
  double t = 0;
  std::size_t n_terms_full = 0;
  std::size_t n_terms_parallel = 0;
  double l1_full = 0;
  double l1_parallel = 0;
  double precision = 0;

  std::string to_json() const;
};

}  // namespace lcu
