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

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>

#include "lcu/errors.hpp"
#include "lcu/experiments.hpp"
#include "lcu/synth.hpp"
#include "test_util.hpp"

using namespace lcu;
using lcu::test::fixture_path;

namespace {

RunConfig small_rh_config() {
  RunConfig cfg = default_rh_config(fixture_path("data/rh_tapered_h5.txt"));
  cfg.time_grid = {0.5, 5.0};
  return cfg;
}

}  // namespace

TEST_CASE("config json round trips and overlays") {
  const RunConfig base = default_rh_config("data/rh_tapered_h5.txt");
  const std::string text = config_to_json(base);
  const RunConfig back = parse_config_json(text, default_rh_config(""));
  CHECK(back.model.g == base.model.g);
  CHECK(back.taylor.order == base.taylor.order);
  CHECK(back.time_grid == base.time_grid);
  CHECK(back.hamiltonian_file == base.hamiltonian_file);

  const RunConfig patched = parse_config_json(
      R"({"shots": 4096, "model": {"g": 0.2}, "jt_grid": [0.1, 0.2]})", base);
  CHECK(patched.shots == 4096);
  CHECK(patched.model.g == 0.2);
  REQUIRE(patched.time_grid.size() == 2);
  CHECK(std::abs(patched.time_grid[0] - 1.0) < 1e-12);

  CHECK_THROWS_AS(parse_config_json("{not json", base), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"experiment": "bogus"})", base), ConfigError);
}

TEST_CASE("config validation catches bad grids") {
  RunConfig cfg = small_rh_config();
  cfg.time_grid = {};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.time_grid = {1.0, 0.5};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.time_grid = {0.51};  // not a tau multiple
  CHECK_THROWS_AS(run_rh_overlap(cfg), ConfigError);
}

TEST_CASE("rh overlap pipeline matches the dense oracle on a short grid") {
  const RunConfig cfg = small_rh_config();
  const RhResult result = run_rh_overlap(cfg);
  REQUIRE(result.rows.size() == 2);
  for (const RhRow& row : result.rows) {
    CHECK(std::abs(row.sq_overlap_reconstructed - row.sq_overlap_sv) < 2e-3);
    CHECK(row.n_terms >= 400);
    CHECK(row.p_parallel > 0);
    CHECK(row.p_parallel <= 1.0 + 1e-12);
    CHECK(row.cx <= 169 + 2 * (16 - 2));
  }
  for (const PropagatorRecord& rec : result.records) {
    CHECK(rec.precision <= 1e-6);
    CHECK(rec.n_terms_parallel <= 11);
  }
}

TEST_CASE("rh overlap without reduction uses the unmerged parallel part") {
  RunConfig cfg = small_rh_config();
  cfg.time_grid = {0.5};
  cfg.use_reduction = false;
  const RhResult result = run_rh_overlap(cfg);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.records[0].n_terms_parallel > 11);
  CHECK(std::abs(result.rows[0].sq_overlap_reconstructed -
                 result.rows[0].sq_overlap_sv) < 2e-3);
}

TEST_CASE("rh overlap runs without a fixture on the untapered model") {
  RunConfig cfg = small_rh_config();
  cfg.hamiltonian_file.clear();
  cfg.time_grid = {0.5};
  const RhResult result = run_rh_overlap(cfg);
  REQUIRE(result.rows.size() == 1);
  CHECK(std::abs(result.rows[0].sq_overlap_reconstructed -
                 result.rows[0].sq_overlap_sv) < 2e-3);
}

TEST_CASE("shot mode converges to the exact columns") {
  RunConfig cfg = small_rh_config();
  cfg.time_grid = {0.5};
  const RhResult exact = run_rh_overlap(cfg);
  cfg.shots = 20480;
  cfg.seed = 11;
  const RhResult sampled = run_rh_overlap(cfg);
  CHECK(std::abs(sampled.rows[0].p_parallel - exact.rows[0].p_parallel) < 0.05);
  CHECK(std::abs(sampled.rows[0].sq_overlap_reduced -
                 exact.rows[0].sq_overlap_reduced) < 0.05);
}

TEST_CASE("csv output is deterministic and exact-mode recomputation matches") {
  const RunConfig cfg = small_rh_config();
  const std::string a = to_csv(run_rh_overlap(cfg).rows);
  const std::string b = to_csv(run_rh_overlap(cfg).rows);
  CHECK(a == b);
  CHECK(a.rfind("Jt,sq_overlap_reduced,p_parallel,l1_parallel,"
                "sq_overlap_reconstructed,sq_overlap_sv,n_terms,depth,cx\n",
                0) == 0);
}

TEST_CASE("resources rows carry the reduction") {
  RunConfig cfg = small_rh_config();
  cfg.experiment = ExperimentKind::Resources;
  cfg.time_grid = {0.5};
  const ResourceResult result = run_resources(cfg);
  REQUIRE(result.rows.size() == 1);
  const ResourceRow& row = result.rows[0];
  CHECK(row.n_terms_reduced <= 11);
  CHECK(row.cx_reduced < row.cx_full);
  CHECK(1.0 - static_cast<double>(row.cx_reduced) / row.cx_full >= 0.9);
  CHECK(1.0 - static_cast<double>(row.depth_reduced) / row.depth_full >= 0.9);
}

TEST_CASE("scaling sweep is monotone and consistent") {
  RunConfig cfg = default_scaling_config();
  cfg.cavities = {2, 3};
  const ScalingResult result = run_scaling(cfg);
  REQUIRE(result.rows.size() == 2);
  CHECK(result.rows[0].n_qubits_total == 6);
  CHECK(result.rows[1].n_qubits_total == 9);
  CHECK(result.rows[0].n_terms <= result.rows[1].n_terms);
  CHECK(result.rows[0].cx_estimate <= result.rows[1].cx_estimate);
  int k = 0;
  while ((std::size_t{1} << k) < result.rows[0].n_terms_reduced) ++k;
  CHECK(result.rows[0].cx_estimate == multiplexor_cost(k, 6));
}

TEST_CASE("jc transition on a short grid tracks the analytic curve") {
  RunConfig cfg = default_jc_config();
  cfg.time_grid = {cfg.time_grid[2], cfg.time_grid[11]};
  const JcResult result = run_jc_transition(cfg);
  REQUIRE(result.rows.size() == 2);
  for (const JcRow& row : result.rows) {
    CHECK(std::abs(row.p_lcu - row.p_analytic) < 5e-3);
    CHECK(std::abs(row.p_trotter - row.p_analytic) < 5e-2);
    CHECK(row.cx_lcu > 0);
  }
  CHECK(result.rows[1].depth_trotter > result.rows[0].depth_trotter);
}

TEST_CASE("write_outputs produces csv, sidecar and records") {
  RunConfig cfg = small_rh_config();
  cfg.time_grid = {0.5};
  cfg.output_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                    "/lcusim_test_out.csv";
  const RhResult result = run_rh_overlap(cfg);
  write_outputs(cfg, to_csv(result.rows), result.records);
  CHECK(std::ifstream(cfg.output_path).good());
  CHECK(std::ifstream(cfg.output_path + ".config.json").good());
  std::ifstream records(cfg.output_path + ".records.jsonl");
  REQUIRE(records.good());
  std::string line;
  std::getline(records, line);
  CHECK(line.find("\"n_terms_parallel\":") != std::string::npos);
}
