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
#include <cstdint>
#include <string>
#include <vector>

#include "lcu/models.hpp"
#include "lcu/propagator.hpp"

namespace lcu {

enum class ExperimentKind { JcTransition, RhOverlap, Resources, Scaling };

struct RunConfig {
  ExperimentKind experiment = ExperimentKind::RhOverlap;
  ModelSpec model;
  TaylorConfig taylor;            // segments resolved per time point
  std::vector<double> time_grid;  // physical times (units of 1/omega_c)
  std::uint64_t shots = 0;        // 0 = exact probabilities
  std::uint64_t seed = 1;
  int oaa_rounds = 0;
  bool use_reduction = true;
  std::string hamiltonian_file;   // optional tapered-operator fixture
  std::vector<int> cavities = {2, 3};  // scaling sweep
  std::string output_path = "out.csv";

  void validate() const;
};

RunConfig default_jc_config();
RunConfig default_rh_config(const std::string& hamiltonian_file);
RunConfig default_resources_config(const std::string& hamiltonian_file);
RunConfig default_scaling_config();

// JSON round trip; parse overlays onto the given base config.
RunConfig parse_config_json(const std::string& text, const RunConfig& base);
std::string config_to_json(const RunConfig& cfg);

struct JcRow {
  double t, p_analytic, p_lcu, p_trotter;
  int depth_lcu, depth_trotter, cx_lcu, cx_trotter;
};

struct RhRow {
  double jt, sq_overlap_reduced, p_parallel, l1_parallel,
      sq_overlap_reconstructed, sq_overlap_sv;
  std::size_t n_terms;
  int depth, cx;
};

struct ResourceRow {
  double jt;
  std::size_t n_terms_full, n_terms_reduced;
  int cx_full, cx_reduced, depth_full, depth_reduced;
};

struct ScalingRow {
  int n_cavities, n_qubits_total;
  std::size_t n_terms, n_terms_reduced;
  std::int64_t cx_estimate;
};

struct JcResult {
  std::vector<JcRow> rows;
};
struct RhResult {
  std::vector<RhRow> rows;
  std::vector<PropagatorRecord> records;
};
struct ResourceResult {
  std::vector<ResourceRow> rows;
};
struct ScalingResult {
  std::vector<ScalingRow> rows;
};

JcResult run_jc_transition(const RunConfig& cfg);
RhResult run_rh_overlap(const RunConfig& cfg);
ResourceResult run_resources(const RunConfig& cfg);
ScalingResult run_scaling(const RunConfig& cfg);

std::string to_csv(const std::vector<JcRow>& rows);
std::string to_csv(const std::vector<RhRow>& rows);
std::string to_csv(const std::vector<ResourceRow>& rows);
std::string to_csv(const std::vector<ScalingRow>& rows);

// Writes the CSV, a resolved-config JSON sidecar (<out>.config.json) and,
// when records are present, a JSON-lines file (<out>.records.jsonl).
void write_outputs(const RunConfig& cfg, const std::string& csv,
                   const std::vector<PropagatorRecord>& records);

// Rabi frequency sqrt(4 g^2 N + delta^2).
double jc_rabi_frequency(const ModelSpec& spec);
double jc_transition_probability(const ModelSpec& spec, double t);

}  // namespace lcu
