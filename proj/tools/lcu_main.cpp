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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcu/errors.hpp"
#include "lcu/experiments.hpp"
#include "lcu/sim.hpp"
#include "lcu/synth.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::uint64_t shots = 0;
  bool shots_set = false;
  int oaa = 0;
  bool oaa_set = false;
  bool no_reduction = false;
  bool out_set = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--out", flags.out_path, "output CSV path")
      ->each([&](const std::string&) { flags.out_set = true; });
  cmd->add_option("--seed", flags.seed, "RNG seed")
      ->each([&](const std::string&) { flags.seed_set = true; });
  cmd->add_option("--shots", flags.shots, "shot count (0 = exact probabilities)")
      ->each([&](const std::string&) { flags.shots_set = true; });
  cmd->add_option("--oaa", flags.oaa, "amplitude amplification rounds")
      ->each([&](const std::string&) { flags.oaa_set = true; });
  cmd->add_flag("--no-reduction", flags.no_reduction,
                "skip the parallel-term merge");
}

lcu::RunConfig resolve(const lcu::RunConfig& def, const CommonFlags& flags) {
  lcu::RunConfig cfg = def;
  if (!flags.config_path.empty()) {
    std::ifstream f(flags.config_path);
    if (!f) throw lcu::ConfigError("cannot open config: " + flags.config_path);
    std::stringstream buf;
    buf << f.rdbuf();
    cfg = lcu::parse_config_json(buf.str(), def);
  }
  if (flags.out_set) cfg.output_path = flags.out_path;
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.shots_set) cfg.shots = flags.shots;
  if (flags.oaa_set) cfg.oaa_rounds = flags.oaa;
  if (flags.no_reduction) cfg.use_reduction = false;
  return cfg;
}

int run_synthesize(const std::string& in_path, std::string qasm_path,
                   std::string report_path, bool full_lcu) {
  const lcu::PauliSum y = lcu::read_pauli_sum_file(in_path);
  if (qasm_path.empty()) qasm_path = in_path + ".qasm";
  if (report_path.empty()) report_path = in_path + ".report.json";
  int k = 0;
  while ((std::size_t{1} << k) < y.size()) ++k;
  const int n = y.n_qubits();
  lcu::Circuit circuit(0);
  if (full_lcu) {
    circuit = lcu::synth_lcu(y);
  } else {
    std::vector<int> anc(static_cast<std::size_t>(k));
    std::vector<int> sys(static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) anc[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < n; ++i) sys[static_cast<std::size_t>(i)] = k + i;
    circuit = lcu::synth_select(y, anc, sys, k + n);
  }
  const lcu::Circuit lowered = circuit.lower_u2x2();
  {
    std::ofstream f(qasm_path);
    if (!f) throw lcu::ConfigError("cannot write " + qasm_path);
    f << lcu::export_qasm(lowered);
  }
  const std::int64_t bound = lcu::multiplexor_cost(k, n);
  const int cx = lcu::two_qubit_count(lowered);
  nlohmann::json report = {{"k", k},
                           {"n", n},
                           {"cx", cx},
                           {"depth", lcu::depth(lowered)},
                           {"bound", bound},
                           {"bound_satisfied", !full_lcu && cx <= bound}};
  if (full_lcu) report["bound_satisfied"] = nullptr;
  std::ofstream f(report_path);
  if (!f) throw lcu::ConfigError("cannot write " + report_path);
  f << report.dump(2) << '\n';
  std::cout << "wrote " << qasm_path << " and " << report_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LCU circuit synthesis and simulation toolkit"};
  app.require_subcommand(1);

  CommonFlags jc_flags, rh_flags, res_flags, sc_flags;
  auto* jc = app.add_subcommand("jc-transition",
                                "Jaynes-Cummings transition probability");
  add_common(jc, jc_flags);
  auto* rh = app.add_subcommand("rh-overlap",
                                "Rabi-Hubbard reduced squared overlap");
  add_common(rh, rh_flags);
  auto* res = app.add_subcommand("resources",
                                 "full vs reduced circuit resources");
  add_common(res, res_flags);
  auto* sc = app.add_subcommand("scaling", "resource scaling over cavity count");
  add_common(sc, sc_flags);

  std::string synth_in, synth_qasm, synth_report;
  bool synth_full = false;
  auto* sy = app.add_subcommand("synthesize",
                                "compile a Pauli-sum file to a circuit");
  sy->add_option("input", synth_in, "Pauli-sum text file")->required();
  sy->add_option("--qasm", synth_qasm, "output QASM path");
  sy->add_option("--report", synth_report, "output JSON report path");
  sy->add_flag("--full-lcu", synth_full,
               "emit prepare-select-unprepare instead of the select oracle");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string default_fixture = "data/rh_tapered_h5.txt";
    if (jc->parsed()) {
      const auto cfg = resolve(lcu::default_jc_config(), jc_flags);
      const auto result = lcu::run_jc_transition(cfg);
      lcu::write_outputs(cfg, lcu::to_csv(result.rows), {});
      std::cout << "wrote " << cfg.output_path << '\n';
    } else if (rh->parsed()) {
      const auto cfg = resolve(lcu::default_rh_config(default_fixture), rh_flags);
      const auto result = lcu::run_rh_overlap(cfg);
      lcu::write_outputs(cfg, lcu::to_csv(result.rows), result.records);
      std::cout << "wrote " << cfg.output_path << '\n';
    } else if (res->parsed()) {
      const auto cfg = resolve(lcu::default_resources_config(default_fixture), res_flags);
      const auto result = lcu::run_resources(cfg);
      lcu::write_outputs(cfg, lcu::to_csv(result.rows), {});
      std::cout << "wrote " << cfg.output_path << '\n';
    } else if (sc->parsed()) {
      const auto cfg = resolve(lcu::default_scaling_config(), sc_flags);
      const auto result = lcu::run_scaling(cfg);
      lcu::write_outputs(cfg, lcu::to_csv(result.rows), {});
      std::cout << "wrote " << cfg.output_path << '\n';
    } else if (sy->parsed()) {
      return run_synthesize(synth_in, synth_qasm, synth_report, synth_full);
    }
  } catch (const lcu::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const lcu::GuardViolation& e) {
    std::cerr << "guard violation: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
