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

// Writes window models in LP format together with this library's own
// verdict on each, for an external MILP solver to confirm.
//
//   lp_fixture <dir>   -> <dir>/<name>.lp and <dir>/expected.txt
//                         ("<name> optimal <objective>" or "<name> infeasible")

#include <filesystem>
#include <fstream>
#include <iostream>

#include "muqut/nn_ilp.hpp"
#include "oracles.hpp"

int main(int argc, char** argv) {
  using namespace muqut;
  if (argc != 2) {
    std::cerr << "usage: lp_fixture <dir>\n";
    return 4;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  const std::string data = MUQUT_DATA_DIR;
  const QuantumCircuit fig4a = load_circuit(data + "/fig4a.qc");

  struct Instance {
    std::string name;
    QuantumCircuit circuit;
    TopologyGraph graph;
    std::vector<Vertex> initial;
    int horizon;
  };
  std::vector<Instance> all = {
      {"line", fig4a, load_topology(data + "/linear4.topo"), {0, 1, 2, 3}, 6},
      {"tee", fig4a, load_topology(data + "/t4.topo"), {0, 1, 2, 3}, 5},
      {"grid", fig4a, load_topology(data + "/grid4.topo"), {0, 2, 1, 3}, 5},
      {"line_short", fig4a, load_topology(data + "/linear4.topo"), {0, 1, 2, 3}, 3},
      {"split", parse_circuit("qubits 4\ncx 0,2\n"), testing::make_graph(4, {{0, 1}, {2, 3}}), {0, 1, 2, 3}, 4},
      {"random", testing::random_circuit(4, 3, 11), load_topology(data + "/t4.topo"), {2, 0, 3, 1}, 7},
  };
  std::ofstream expected(dir / "expected.txt");
  for (const Instance& inst : all) {
    const MappingProblem p = testing::make_problem(inst.circuit, inst.graph, inst.initial, inst.horizon);
    const IlpModel model = build_model(p);
    std::ofstream(dir / (inst.name + ".lp")) << export_lp(model);
    const SolveResult r = solve(model, std::chrono::seconds(60));
    if (r.status == SolveStatus::Optimal) {
      expected << inst.name << " optimal " << r.schedule->objective << '\n';
    } else if (r.status == SolveStatus::Infeasible) {
      expected << inst.name << " infeasible\n";
    } else {
      std::cerr << inst.name << ": solver timed out\n";
      return 1;
    }
  }
  return 0;
}
