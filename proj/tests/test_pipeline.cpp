// Copyright 2026 The muqut Authors
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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "muqut/fidelity.hpp"
#include "muqut/pipeline.hpp"

namespace muqut {
namespace {

namespace fs = std::filesystem;

std::string data(const char* name) { return std::string(MUQUT_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig melbourne_run(const char* circuit = "fig1a.qc") {
  RunConfig c;
  c.circuit_path = data(circuit);
  c.topology_path = data("ibmq16_melbourne.topo");
  c.attempts = 60;
  c.seed = 9;
  c.window_size = 2;
  c.configs = 3;
  c.time_limit = 20.0;
  return c;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("muqut_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Pipeline, IdenticalRunsWriteIdenticalFiles) {
  RunConfig a = melbourne_run();
  a.out_dir = scratch("a").string();
  RunConfig b = a;
  b.out_dir = scratch("b").string();
  b.jobs = 3;
  run_pipeline(a);
  run_pipeline(b);
  for (const char* f : {"report.json", "summary.csv", "mapped.qc"}) {
    const std::string x = slurp(fs::path(a.out_dir) / f);
    EXPECT_FALSE(x.empty()) << f;
    EXPECT_EQ(x, slurp(fs::path(b.out_dir) / f)) << f;
  }
}

TEST(Pipeline, BestBeatsEveryCandidate) {
  const RunReport r = run_pipeline(melbourne_run());
  ASSERT_TRUE(r.best);
  const CandidateRecord& best = r.candidates[*r.best];
  std::size_t mapped = 0;
  for (const CandidateRecord& c : r.candidates) {
    if (c.status != CandidateStatus::Mapped) continue;
    ++mapped;
    EXPECT_LE(c.fidelity_best, best.fidelity_best);
    EXPECT_GE(c.improvement(), 1.0);
    EXPECT_LE(c.fidelity_min, c.fidelity_avg);
    EXPECT_LE(c.fidelity_avg, c.fidelity_max);
    EXPECT_DOUBLE_EQ(c.fidelity_best, c.fidelity_max);
    EXPECT_LE(c.fidelity_initial, c.fidelity_best);
    EXPECT_GE(c.placements, 1u);
  }
  EXPECT_GE(mapped, 1u);
  EXPECT_EQ(r.candidates.size(), r.subgraphs.graphs.size() * 3);
  EXPECT_EQ(exit_code(r), 0);
}

TEST(Pipeline, WrittenCircuitMatchesReport) {
  RunConfig cfg = melbourne_run();
  cfg.out_dir = scratch("recount").string();
  const RunReport r = run_pipeline(cfg);
  ASSERT_TRUE(r.best);
  const CandidateRecord& best = r.candidates[*r.best];
  const QuantumCircuit mapped = load_circuit((fs::path(cfg.out_dir) / "mapped.qc").string());
  const QuantumCircuit original = load_circuit(cfg.circuit_path);
  const TopologyGraph device = load_topology(cfg.topology_path);
  const NativeGateSet ibm = native_gate_set("ibm");
  const GateCounts n = count_gates(mapped, ibm);
  EXPECT_EQ(n.total, best.counts.total);
  EXPECT_EQ(n.noisy, best.counts.noisy);
  EXPECT_EQ(static_cast<int>(n.swaps), best.swaps);
  EXPECT_TRUE(verify_nn_compliance(mapped, device));
  EXPECT_TRUE(verify_equivalence(original, mapped));
  EXPECT_NEAR(success_rate(mapped, device.calibration, ibm), best.fidelity_best, 1e-12);

  const auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
  EXPECT_EQ(j["schema"], "muqut-report");
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["candidates"].size(), r.candidates.size());
  EXPECT_EQ(j["best"]["candidate"], *r.best);
  EXPECT_EQ(j["best"]["swaps"], best.swaps);
  EXPECT_FALSE(j.contains("timings"));

  std::istringstream csv(slurp(fs::path(cfg.out_dir) / "summary.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line,
            "kind,subgraph,config,window_size,gates_total,gates_noisy,swaps,depth,"
            "fidelity_initial,fidelity_best,improvement");
  std::size_t rows = 0;
  std::vector<std::string> tail;
  while (std::getline(csv, line)) {
    if (line.rfind("candidate,", 0) == 0) {
      ++rows;
    } else {
      tail.push_back(line.substr(0, line.find(',')));
    }
  }
  EXPECT_EQ(rows, static_cast<std::size_t>(std::count_if(
                      r.candidates.begin(), r.candidates.end(),
                      [](const CandidateRecord& c) { return c.status == CandidateStatus::Mapped; })));
  EXPECT_EQ(tail, (std::vector<std::string>{"min", "avg", "max"}));
}

TEST(Pipeline, TimingsAreOptIn) {
  RunConfig cfg = melbourne_run();
  cfg.timings = true;
  cfg.configs = 1;
  const auto j = nlohmann::json::parse(report_json(run_pipeline(cfg)));
  EXPECT_TRUE(j.contains("timings"));
}

TEST(Pipeline, EmptyCircuitHasPerfectFidelity) {
  RunConfig cfg = melbourne_run();
  QuantumCircuit empty(3);
  const RunReport r = run_pipeline(cfg, empty, load_topology(cfg.topology_path));
  ASSERT_TRUE(r.best);
  EXPECT_EQ(r.candidates[*r.best].fidelity_best, 1.0);
  EXPECT_EQ(r.candidates[*r.best].swaps, 0);
}

TEST(Pipeline, RejectsBadInput) {
  RunConfig cfg = melbourne_run();
  EXPECT_THROW(run_pipeline(cfg, QuantumCircuit(15), load_topology(cfg.topology_path)),
               std::invalid_argument);
  RunConfig bad = cfg;
  bad.window_size = 0;
  EXPECT_THROW(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.probability = 0.0;
  EXPECT_THROW(validate_config(bad), std::invalid_argument);
  bad = cfg;
  bad.configs = 0;
  EXPECT_THROW(validate_config(bad), std::invalid_argument);
  EXPECT_NO_THROW(validate_config(cfg));
}

TEST(Pipeline, UnmappableCircuitExitsTwo) {
  // A 4-star is the only 4-vertex shape of this device, and it cannot hold
  // two disjoint pairs.
  TopologyGraph star;
  for (int v = 0; v < 4; ++v) star.add_vertex(v);
  for (int v = 1; v < 4; ++v) {
    star.add_edge(0, v);
    star.calibration.edge_error[{0, v}] = 0.01;
  }
  const QuantumCircuit c = parse_circuit("qubits 4\ncx 0,1\ncx 2,3\n");
  RunConfig cfg = melbourne_run();
  const RunReport r = run_pipeline(cfg, c, star);
  EXPECT_FALSE(r.best);
  ASSERT_FALSE(r.candidates.empty());
  EXPECT_EQ(r.candidates[0].status, CandidateStatus::Infeasible);
  EXPECT_EQ(exit_code(r), 2);
  EXPECT_EQ(nlohmann::json::parse(report_json(r))["best"], nullptr);
}

}  // namespace
}  // namespace muqut
