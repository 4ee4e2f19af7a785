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

#include "lcu/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "lcu/errors.hpp"
#include "lcu/sim.hpp"
#include "lcu/synth.hpp"

namespace lcu {

namespace {

using nlohmann::json;

constexpr std::size_t kFullSynthesisTermCap = 1024;

// Runs the body over [0, count) in an OpenMP loop, carrying the first
// exception across the parallel region.
template <typename Fn>
void parallel_indexed(std::size_t count, Fn&& body) {
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(lcu_parallel_indexed_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

int resolve_segments(double t, double tau) {
  const int m = static_cast<int>(std::llround(t / tau));
  if (m < 1 || std::abs(m * tau - t) > 1e-9 * std::max(1.0, std::abs(t))) {
    throw ConfigError("time " + std::to_string(t) +
                      " is not a positive multiple of tau = " + std::to_string(tau));
  }
  return m;
}

TaylorConfig per_point(const TaylorConfig& base, double t) {
  TaylorConfig cfg = base;
  cfg.segments = resolve_segments(t, cfg.tau);
  cfg.validate();
  return cfg;
}

std::string experiment_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::JcTransition: return "jc_transition";
    case ExperimentKind::RhOverlap: return "rh_overlap";
    case ExperimentKind::Resources: return "resources";
    case ExperimentKind::Scaling: return "scaling";
  }
  return "?";
}

ExperimentKind experiment_from_name(const std::string& s) {
  if (s == "jc_transition") return ExperimentKind::JcTransition;
  if (s == "rh_overlap") return ExperimentKind::RhOverlap;
  if (s == "resources") return ExperimentKind::Resources;
  if (s == "scaling") return ExperimentKind::Scaling;
  throw ConfigError("unknown experiment '" + s + "'");
}

// Loads the tapered operator when a fixture path is configured; otherwise
// builds the untapered model. Returns the matching initial state.
std::pair<PauliSum, StateVector> rh_operator_and_state(const RunConfig& cfg) {
  if (!cfg.hamiltonian_file.empty()) {
    PauliSum h = read_pauli_sum_file(cfg.hamiltonian_file);
    if (h.n_qubits() != 5) {
      throw ConfigError("tapered fixture must be a 5-qubit operator");
    }
    return {std::move(h), build_initial_state(cfg.model)};
  }
  return {build_rh_hamiltonian(cfg.model), build_mott_state(cfg.model)};
}

struct RhPoint {
  PauliSum full;
  PauliSum reduced;
  double prec;
};

RhPoint rh_pipeline_point(const PauliSum& h, const StateVector& psi0,
                          const RunConfig& cfg, double t) {
  RhPoint out{PauliSum(h.n_qubits()), PauliSum(h.n_qubits()), 0.0};
  out.full = collapse_propagator(h, per_point(cfg.taylor, t));
  out.prec = precision(out.full, psi0);
  const SplitOperator split = preselect(out.full, psi0);
  out.reduced = cfg.use_reduction ? merge_parallel_terms(split, psi0) : split.parallel;
  return out;
}

}  // namespace

void RunConfig::validate() const {
  model.validate();
  taylor.validate();
  if (experiment != ExperimentKind::Scaling) {
    if (time_grid.empty()) throw ConfigError("time grid must be nonempty");
    for (std::size_t i = 0; i + 1 < time_grid.size(); ++i) {
      if (!(time_grid[i] < time_grid[i + 1])) {
        throw ConfigError("time grid must be strictly increasing");
      }
    }
    if (time_grid.front() <= 0) throw ConfigError("times must be positive");
  } else {
    if (cavities.empty()) throw ConfigError("cavity sweep must be nonempty");
    for (int c : cavities) {
      if (c < 2) throw ConfigError("cavity counts must be >= 2");
    }
  }
  if (oaa_rounds < 0) throw ConfigError("oaa rounds must be >= 0");
  if (output_path.empty()) throw ConfigError("output path must be nonempty");
}

double jc_rabi_frequency(const ModelSpec& spec) {
  const double d = spec.delta();
  return std::sqrt(4.0 * spec.g * spec.g * spec.n_start + d * d);
}

double jc_transition_probability(const ModelSpec& spec, double t) {
  const double omega = jc_rabi_frequency(spec);
  const double amp = 4.0 * spec.g * spec.g * spec.n_start / (omega * omega);
  const double s = std::sin(omega * t / 2.0);
  return amp * s * s;
}

RunConfig default_jc_config() {
  RunConfig cfg;
  cfg.experiment = ExperimentKind::JcTransition;
  cfg.model.model = ModelKind::JaynesCummings;
  cfg.model.omega_a = 1.001;
  cfg.model.g = 0.01;
  cfg.model.max_photons = 7;
  cfg.model.n_start = 4;
  cfg.taylor.order = 8;
  cfg.taylor.eps_term = 1e-8;
  const double omega = jc_rabi_frequency(cfg.model);
  cfg.taylor.tau = 4.0 * std::numbers::pi / 1250.0 / omega;
  cfg.time_grid.clear();
  for (int i = 1; i <= 25; ++i) cfg.time_grid.push_back(25.0 * i * cfg.taylor.tau);
  cfg.output_path = "jc_transition.csv";
  return cfg;
}

RunConfig default_rh_config(const std::string& hamiltonian_file) {
  RunConfig cfg;
  cfg.experiment = ExperimentKind::RhOverlap;
  cfg.model.model = ModelKind::RabiHubbard;
  cfg.model.omega_a = 1.1;
  cfg.model.g = 0.1;
  cfg.model.j_hop = 0.1;
  cfg.model.n_cavities = 2;
  cfg.model.max_photons = 2;
  cfg.taylor.order = 8;
  cfg.taylor.tau = 0.05;
  cfg.taylor.eps_term = 1e-8;
  cfg.time_grid.clear();
  for (int i = 1; i <= 20; ++i) cfg.time_grid.push_back(0.05 * i / cfg.model.j_hop);
  cfg.hamiltonian_file = hamiltonian_file;
  cfg.output_path = "rh_overlap.csv";
  return cfg;
}

RunConfig default_resources_config(const std::string& hamiltonian_file) {
  RunConfig cfg = default_rh_config(hamiltonian_file);
  cfg.experiment = ExperimentKind::Resources;
  cfg.output_path = "rh_resources.csv";
  return cfg;
}

RunConfig default_scaling_config() {
  RunConfig cfg;
  cfg.experiment = ExperimentKind::Scaling;
  cfg.model.model = ModelKind::RabiHubbard;
  cfg.model.max_photons = 3;
  cfg.taylor.order = 6;
  cfg.taylor.tau = 0.02 / cfg.model.j_hop;
  cfg.taylor.eps_term = 1e-8;
  cfg.time_grid = {cfg.taylor.tau};
  cfg.cavities = {2, 3};
  cfg.output_path = "rh_scaling.csv";
  return cfg;
}

RunConfig parse_config_json(const std::string& text, const RunConfig& base) {
  RunConfig cfg = base;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  try {
    if (j.contains("experiment")) cfg.experiment = experiment_from_name(j["experiment"]);
    if (j.contains("model")) {
      const json& m = j["model"];
      if (m.contains("model")) {
        const std::string name = m["model"];
        if (name == "jaynes_cummings") cfg.model.model = ModelKind::JaynesCummings;
        else if (name == "rabi_hubbard") cfg.model.model = ModelKind::RabiHubbard;
        else throw ConfigError("unknown model '" + name + "'");
      }
      if (m.contains("omega_c")) cfg.model.omega_c = m["omega_c"];
      if (m.contains("omega_a")) cfg.model.omega_a = m["omega_a"];
      if (m.contains("g")) cfg.model.g = m["g"];
      if (m.contains("J")) cfg.model.j_hop = m["J"];
      if (m.contains("n_cavities")) cfg.model.n_cavities = m["n_cavities"];
      if (m.contains("max_photons")) cfg.model.max_photons = m["max_photons"];
      if (m.contains("N_start")) cfg.model.n_start = m["N_start"];
    }
    if (j.contains("taylor")) {
      const json& t = j["taylor"];
      if (t.contains("K")) cfg.taylor.order = t["K"];
      if (t.contains("tau")) cfg.taylor.tau = t["tau"];
      if (t.contains("eps_term")) cfg.taylor.eps_term = t["eps_term"];
    }
    if (j.contains("time_grid")) {
      cfg.time_grid = j["time_grid"].get<std::vector<double>>();
    }
    if (j.contains("jt_grid")) {
      cfg.time_grid.clear();
      for (double jt : j["jt_grid"].get<std::vector<double>>()) {
        cfg.time_grid.push_back(jt / cfg.model.j_hop);
      }
    }
    if (j.contains("shots")) cfg.shots = j["shots"];
    if (j.contains("seed")) cfg.seed = j["seed"];
    if (j.contains("oaa_rounds")) cfg.oaa_rounds = j["oaa_rounds"];
    if (j.contains("use_reduction")) cfg.use_reduction = j["use_reduction"];
    if (j.contains("hamiltonian_file")) cfg.hamiltonian_file = j["hamiltonian_file"];
    if (j.contains("cavities")) cfg.cavities = j["cavities"].get<std::vector<int>>();
    if (j.contains("output_path")) cfg.output_path = j["output_path"];
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json m = {
      {"model", cfg.model.model == ModelKind::JaynesCummings ? "jaynes_cummings"
                                                             : "rabi_hubbard"},
      {"omega_c", cfg.model.omega_c}, {"omega_a", cfg.model.omega_a},
      {"g", cfg.model.g},             {"J", cfg.model.j_hop},
      {"n_cavities", cfg.model.n_cavities},
      {"max_photons", cfg.model.max_photons},
      {"N_start", cfg.model.n_start},
  };
  json t = {{"K", cfg.taylor.order},
            {"tau", cfg.taylor.tau},
            {"eps_term", cfg.taylor.eps_term}};
  json j = {{"experiment", experiment_name(cfg.experiment)},
            {"model", m},
            {"taylor", t},
            {"time_grid", cfg.time_grid},
            {"shots", cfg.shots},
            {"seed", cfg.seed},
            {"oaa_rounds", cfg.oaa_rounds},
            {"use_reduction", cfg.use_reduction},
            {"hamiltonian_file", cfg.hamiltonian_file},
            {"cavities", cfg.cavities},
            {"output_path", cfg.output_path}};
  return j.dump(2);
}

JcResult run_jc_transition(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment != ExperimentKind::JcTransition ||
      cfg.model.model != ModelKind::JaynesCummings) {
    throw ConfigError("config is not a jc_transition experiment");
  }
  const PauliSum h = build_jc_hamiltonian(cfg.model);
  const int n = jc_qubit_count(cfg.model);
  const std::uint64_t idx0 = jc_basis_index(cfg.model, cfg.model.n_start, false);
  const std::uint64_t idxf = jc_basis_index(cfg.model, cfg.model.n_start - 1, true);
  const Circuit trotter_step = synth_trotter_step(h, cfg.taylor.tau);

  JcResult result;
  result.rows.assign(cfg.time_grid.size(), JcRow{});
  parallel_indexed(cfg.time_grid.size(), [&](std::size_t i) {
    const double t_req = cfg.time_grid[i];
    const TaylorConfig tc = per_point(cfg.taylor, t_req);
    const double t = tc.segments * tc.tau;
    const PauliSum y = collapse_propagator(h, tc);
    const Circuit lcu =
        cfg.oaa_rounds > 0 ? synth_oaa(y, cfg.oaa_rounds) : synth_lcu(y);
    const int n_anc = lcu.n_qubits() - n;

    StateVector input = StateVector::basis_state(lcu.n_qubits(), idx0);
    const StateVector out = run(lcu, input);
    double p_lcu = 0;
    if (cfg.shots == 0) {
      double p_anc = 0, p_target = 0;
      for (std::size_t a = 0; a < out.amps.size(); ++a) {
        const std::uint64_t idx = static_cast<std::uint64_t>(a);
        if ((idx >> n) != 0) continue;  // ancilla bits are the high bits
        const double w = std::norm(out.amps[a]);
        p_anc += w;
        if ((idx & ((1ull << n) - 1)) == idxf) p_target += w;
      }
      p_lcu = p_anc > 0 ? p_target / p_anc : 0.0;
    } else {
      Circuit measured(lcu.n_qubits());
      for (int q = 0; q < n; ++q) {
        if ((idx0 >> (n - 1 - q)) & 1u) measured.add(Gate::x(n_anc + q));
      }
      measured.append(lcu);
      const ShotResult shots = sample(measured, cfg.shots, cfg.seed + i);
      std::uint64_t anc0 = 0, hit = 0;
      const std::string anc_zero(static_cast<std::size_t>(n_anc), '0');
      for (const auto& [bits, count] : shots.counts) {
        if (bits.rfind(anc_zero, 0) != 0) continue;
        anc0 += count;
        std::uint64_t sys = 0;
        for (int q = n_anc; q < n_anc + n; ++q) {
          sys = (sys << 1) | static_cast<std::uint64_t>(bits[static_cast<std::size_t>(q)] - '0');
        }
        if (sys == idxf) hit += count;
      }
      p_lcu = anc0 > 0 ? static_cast<double>(hit) / static_cast<double>(anc0) : 0.0;
    }

    // first-order product baseline with the same segmentation
    Circuit trotter(n);
    for (int s = 0; s < tc.segments; ++s) trotter.append(trotter_step);
    double p_trot = 0;
    if (cfg.shots == 0) {
      const StateVector tr_out = run(trotter, StateVector::basis_state(n, idx0));
      p_trot = std::norm(tr_out.amps[idxf]);
    } else {
      // the evolved register is measured directly; initial state prepared
      // by X gates on the |1> bits of idx0
      Circuit measured(n);
      for (int q = 0; q < n; ++q) {
        if ((idx0 >> (n - 1 - q)) & 1u) measured.add(Gate::x(q));
      }
      measured.append(trotter);
      const ShotResult shots = sample(measured, cfg.shots, cfg.seed + 1000 + i);
      std::uint64_t hit = 0;
      for (const auto& [bits, count] : shots.counts) {
        std::uint64_t sys = 0;
        for (char b : bits) sys = (sys << 1) | static_cast<std::uint64_t>(b - '0');
        if (sys == idxf) hit += count;
      }
      p_trot = static_cast<double>(hit) / static_cast<double>(cfg.shots);
    }

    result.rows[i] = JcRow{t,
                           jc_transition_probability(cfg.model, t),
                           p_lcu,
                           p_trot,
                           depth(lcu),
                           depth(trotter),
                           two_qubit_count(lcu),
                           two_qubit_count(trotter)};
  });
  return result;
}

RhResult run_rh_overlap(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment != ExperimentKind::RhOverlap ||
      cfg.model.model != ModelKind::RabiHubbard) {
    throw ConfigError("config is not an rh_overlap experiment");
  }
  const auto [h, psi0] = rh_operator_and_state(cfg);
  RhResult result;
  result.rows.assign(cfg.time_grid.size(), RhRow{});
  result.records.assign(cfg.time_grid.size(), PropagatorRecord{});
  parallel_indexed(cfg.time_grid.size(), [&](std::size_t i) {
    const TaylorConfig tc = per_point(cfg.taylor, cfg.time_grid[i]);
    const double t = tc.segments * tc.tau;
    const RhPoint point = rh_pipeline_point(h, psi0, cfg, t);
    const double l1_par = l1_norm(point.reduced);
    double p_par = 0, sq_par = 0;
    if (cfg.shots == 0) {
      std::tie(p_par, sq_par) = vacuum_test(point.reduced, psi0);
    } else {
      std::tie(p_par, sq_par) =
          vacuum_test_sampled(point.reduced, psi0, cfg.shots, cfg.seed + i);
    }
    const double denom =
        expectation(sum_multiply(adjoint(point.full), point.full), psi0).real();
    const double recon = reduced_overlap_reconstruct(sq_par, p_par, l1_par, denom);
    const StateVector evolved = dense_expm_reference(h, t, psi0);
    Complex overlap = 0;
    for (std::size_t a = 0; a < psi0.amps.size(); ++a) {
      overlap += std::conj(psi0.amps[a]) * evolved.amps[a];
    }
    const Circuit lcu = synth_lcu(point.reduced);
    result.rows[i] = RhRow{cfg.model.j_hop * t,
                           sq_par,
                           p_par,
                           l1_par,
                           recon,
                           std::norm(overlap),
                           point.full.size(),
                           depth(lcu),
                           two_qubit_count(lcu)};
    result.records[i] = PropagatorRecord{t,
                                         point.full.size(),
                                         point.reduced.size(),
                                         l1_norm(point.full),
                                         l1_par,
                                         point.prec};
  });
  return result;
}

ResourceResult run_resources(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment != ExperimentKind::Resources ||
      cfg.model.model != ModelKind::RabiHubbard) {
    throw ConfigError("config is not a resources experiment");
  }
  const auto [h, psi0] = rh_operator_and_state(cfg);
  ResourceResult result;
  result.rows.assign(cfg.time_grid.size(), ResourceRow{});
  parallel_indexed(cfg.time_grid.size(), [&](std::size_t i) {
    const TaylorConfig tc = per_point(cfg.taylor, cfg.time_grid[i]);
    const double t = tc.segments * tc.tau;
    const RhPoint point = rh_pipeline_point(h, psi0, cfg, t);
    if (point.full.size() > kFullSynthesisTermCap) {
      throw GuardViolation("full-propagator synthesis capped at 1024 terms");
    }
    const Circuit full_lcu = synth_lcu(point.full);
    const Circuit red_lcu = synth_lcu(point.reduced);
    result.rows[i] = ResourceRow{cfg.model.j_hop * t,
                                 point.full.size(),
                                 point.reduced.size(),
                                 two_qubit_count(full_lcu),
                                 two_qubit_count(red_lcu),
                                 depth(full_lcu),
                                 depth(red_lcu)};
  });
  return result;
}

ScalingResult run_scaling(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.experiment != ExperimentKind::Scaling ||
      cfg.model.model != ModelKind::RabiHubbard) {
    throw ConfigError("config is not a scaling experiment");
  }
  ScalingResult result;
  result.rows.reserve(cfg.cavities.size());
  for (int n_cav : cfg.cavities) {
    ModelSpec model = cfg.model;
    model.n_cavities = n_cav;
    const PauliSum h = build_rh_hamiltonian(model);
    const StateVector psi0 = build_mott_state(model);
    TaylorConfig tc = cfg.taylor;
    tc.segments = 1;
    tc.validate();
    const PauliSum y = collapse_propagator(h, tc);
    const SplitOperator split = preselect(y, psi0);
    const PauliSum reduced =
        cfg.use_reduction ? merge_parallel_terms(split, psi0) : split.parallel;
    int k = 0;
    while ((std::size_t{1} << k) < reduced.size()) ++k;
    result.rows.push_back(ScalingRow{n_cav, rh_qubit_count(model), y.size(),
                                     reduced.size(),
                                     multiplexor_cost(k, rh_qubit_count(model))});
  }
  return result;
}

namespace {

template <typename Row, typename Fn>
std::string csv_impl(const std::string& header, const std::vector<Row>& rows, Fn fn) {
  std::ostringstream out;
  out.precision(12);
  out << header << '\n';
  for (const Row& r : rows) {
    fn(out, r);
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string to_csv(const std::vector<JcRow>& rows) {
  return csv_impl(
      "t,P_analytic,P_lcu,P_trotter,depth_lcu,depth_trotter,cx_lcu,cx_trotter",
      rows, [](std::ostringstream& o, const JcRow& r) {
        o << r.t << ',' << r.p_analytic << ',' << r.p_lcu << ',' << r.p_trotter
          << ',' << r.depth_lcu << ',' << r.depth_trotter << ',' << r.cx_lcu
          << ',' << r.cx_trotter;
      });
}

std::string to_csv(const std::vector<RhRow>& rows) {
  return csv_impl(
      "Jt,sq_overlap_reduced,p_parallel,l1_parallel,sq_overlap_reconstructed,"
      "sq_overlap_sv,n_terms,depth,cx",
      rows, [](std::ostringstream& o, const RhRow& r) {
        o << r.jt << ',' << r.sq_overlap_reduced << ',' << r.p_parallel << ','
          << r.l1_parallel << ',' << r.sq_overlap_reconstructed << ','
          << r.sq_overlap_sv << ',' << r.n_terms << ',' << r.depth << ','
          << r.cx;
      });
}

std::string to_csv(const std::vector<ResourceRow>& rows) {
  return csv_impl(
      "Jt,n_terms_full,n_terms_reduced,cx_full,cx_reduced,depth_full,"
      "depth_reduced",
      rows, [](std::ostringstream& o, const ResourceRow& r) {
        o << r.jt << ',' << r.n_terms_full << ',' << r.n_terms_reduced << ','
          << r.cx_full << ',' << r.cx_reduced << ',' << r.depth_full << ','
          << r.depth_reduced;
      });
}

std::string to_csv(const std::vector<ScalingRow>& rows) {
  return csv_impl(
      "n_cavities,n_qubits_total,n_terms,n_terms_reduced,cx_estimate", rows,
      [](std::ostringstream& o, const ScalingRow& r) {
        o << r.n_cavities << ',' << r.n_qubits_total << ',' << r.n_terms << ','
          << r.n_terms_reduced << ',' << r.cx_estimate;
      });
}

void write_outputs(const RunConfig& cfg, const std::string& csv,
                   const std::vector<PropagatorRecord>& records) {
  {
    std::ofstream f(cfg.output_path);
    if (!f) throw ConfigError("cannot write output file: " + cfg.output_path);
    f << csv;
  }
  {
    std::ofstream f(cfg.output_path + ".config.json");
    if (!f) throw ConfigError("cannot write config sidecar");
    f << config_to_json(cfg) << '\n';
  }
  if (!records.empty()) {
    std::ofstream f(cfg.output_path + ".records.jsonl");
    if (!f) throw ConfigError("cannot write records file");
    for (const PropagatorRecord& r : records) f << r.to_json() << '\n';
  }
}

}  // namespace lcu
