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

// muqut: map a circuit onto a device, export a window's ILP, or verify a
// mapped circuit.
//
// Exit codes: 0 success, 1 verification failed, 2 no feasible mapping,
// 3 mapped but some window stopped at the time limit, 4 bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "muqut/circuit.hpp"
#include "muqut/error.hpp"
#include "muqut/nn_ilp.hpp"
#include "muqut/pipeline.hpp"
#include "muqut/topology.hpp"
#include "muqut/windowed.hpp"

namespace {

constexpr int kInputError = 4;

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw std::runtime_error("cannot write " + path);
}

muqut::MappingProblem window_problem(const muqut::QuantumCircuit& circuit,
                                     const muqut::TopologyGraph& subgraph,
                                     const std::vector<muqut::Vertex>& initial, int window_size,
                                     std::size_t window) {
  const muqut::QuantumCircuit lev = muqut::levelize(circuit);
  const muqut::WindowPlan plan = muqut::split_windows(lev, window_size);
  if (window >= plan.windows.size()) {
    throw std::invalid_argument("circuit has only " + std::to_string(plan.windows.size()) + " windows");
  }
  const auto sets = muqut::interactions(lev);
  const auto [first, last] = plan.windows[window];
  muqut::MappingProblem problem;
  problem.subgraph = subgraph;
  problem.initial = initial;
  problem.interactions.assign(sets.begin() + (first - 1), sets.begin() + last);
  return problem;
}

int run_map(const muqut::RunConfig& config, const std::string& lp_path) {
  const muqut::RunReport report = muqut::run_pipeline(config);
  std::size_t mapped = 0;
  for (const auto& c : report.candidates) mapped += c.status == muqut::CandidateStatus::Mapped;
  std::cerr << "subgraphs: " << report.subgraphs.graphs.size() << ", candidates: " << report.candidates.size()
            << ", mapped: " << mapped << '\n';
  if (!report.best) {
    std::cerr << "no candidate could be mapped\n";
    return muqut::exit_code(report);
  }
  const muqut::CandidateRecord& best = report.candidates[*report.best];
  std::cout << "best candidate " << *report.best << ": swaps " << best.swaps << ", depth " << best.depth
            << ", noisy gates " << best.counts.noisy << ", fidelity " << best.fidelity_best
            << " (initial " << best.fidelity_initial << ")\n";
  if (!lp_path.empty() && best.mapping && !best.mapping->windows.empty()) {
    const muqut::QuantumCircuit circuit = muqut::load_circuit(config.circuit_path);
    muqut::MappingProblem problem = window_problem(circuit, best.mapping->subgraph, best.initial,
                                                   config.window_size, 0);
    problem.horizon = best.mapping->windows.front().schedule.horizon;
    write_text(lp_path, muqut::export_lp(muqut::build_model(problem)));
  }
  return muqut::exit_code(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest-neighbour quantum circuit mapping with noise-aware placement"};
  app.require_subcommand(1);

  muqut::RunConfig config;
  std::string lp_path;
  std::string placement = "auto";
  std::optional<int> horizon, horizon_max;
  auto* map = app.add_subcommand("map", "map a circuit onto a device");
  map->add_option("--circuit", config.circuit_path, "circuit file")->required();
  map->add_option("--topology", config.topology_path, "topology file")->required();
  map->add_option("--window-size", config.window_size, "levels per window")->capture_default_str();
  map->add_option("--attempts", config.attempts, "subgraph growth attempts")->capture_default_str();
  map->add_option("--prob", config.probability, "neighbour acceptance probability")->capture_default_str();
  map->add_option("--seed", config.seed, "random seed")->capture_default_str();
  map->add_option("--configs", config.configs, "initial configurations per subgraph")->capture_default_str();
  map->add_option("--horizon", horizon, "first horizon T0 (default k + 2 * non-adjacent pairs)");
  map->add_option("--horizon-max", horizon_max, "last horizon (default k + 3n)");
  map->add_option("--time-limit", config.time_limit, "seconds per window")->capture_default_str();
  map->add_option("--placement-mode", placement, "auto, grid or general")
      ->check(CLI::IsMember({"auto", "grid", "general"}))
      ->capture_default_str();
  map->add_option("--placement-limit", config.placement_limit, "max placements per candidate")
      ->capture_default_str();
  map->add_option("--gates", config.gates, "native gate set")
      ->check(CLI::IsMember({"ibm", "rigetti"}))
      ->capture_default_str();
  map->add_option("--jobs", config.jobs, "worker threads")->capture_default_str();
  map->add_option("--out", config.out_dir, "output directory")->required();
  map->add_option("--export-lp", lp_path, "write the best candidate's first window model here");
  map->add_flag("--timings", config.timings, "include wall-clock timings in the report");

  std::string lp_circuit, lp_topology, lp_vertices, lp_layout, lp_out = "-";
  int lp_window_size = 0;
  std::size_t lp_window = 0;
  std::optional<int> lp_horizon;
  auto* lp = app.add_subcommand("export-lp", "write one window's 0-1 model in LP format");
  lp->add_option("--circuit", lp_circuit, "circuit file")->required();
  lp->add_option("--topology", lp_topology, "topology file")->required();
  lp->add_option("--vertices", lp_vertices, "comma-separated subgraph vertices (default: all)");
  lp->add_option("--layout", lp_layout, "comma-separated vertex per logical qubit (default: sorted)");
  lp->add_option("--window-size", lp_window_size, "levels per window (default: whole circuit)");
  lp->add_option("--window", lp_window, "0-based window index")->capture_default_str();
  lp->add_option("--horizon", lp_horizon, "horizon T (default k + 2 * non-adjacent pairs)");
  lp->add_option("--out", lp_out, "output file, - for standard output")->capture_default_str();

  std::string v_circuit, v_mapped, v_topology;
  auto* verify = app.add_subcommand("verify", "check a mapped circuit against its original");
  verify->add_option("--circuit", v_circuit, "original circuit")->required();
  verify->add_option("--mapped", v_mapped, "mapped circuit")->required();
  verify->add_option("--topology", v_topology, "topology file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*map) {
      config.horizon = horizon;
      config.horizon_max = horizon_max;
      config.placement_mode = placement == "grid"      ? muqut::PlacementMode::Grid
                              : placement == "general" ? muqut::PlacementMode::General
                                                       : muqut::PlacementMode::Auto;
      return run_map(config, lp_path);
    }
    if (*lp) {
      const muqut::QuantumCircuit circuit = muqut::load_circuit(lp_circuit);
      muqut::TopologyGraph device = muqut::load_topology(lp_topology);
      const muqut::TopologyGraph subgraph = lp_vertices.empty() ? device : device.induced(parse_list(lp_vertices));
      std::vector<muqut::Vertex> initial =
          lp_layout.empty() ? subgraph.vertices() : parse_list(lp_layout);
      const int w = lp_window_size > 0 ? lp_window_size : std::max(1, circuit.depth());
      muqut::MappingProblem problem = window_problem(circuit, subgraph, initial, w, lp_window);
      problem.horizon = lp_horizon.value_or(muqut::default_initial_horizon(problem));
      write_text(lp_out, muqut::export_lp(muqut::build_model(problem)));
      return 0;
    }
    const muqut::QuantumCircuit original = muqut::load_circuit(v_circuit);
    const muqut::QuantumCircuit mapped = muqut::load_circuit(v_mapped);
    const muqut::TopologyGraph device = muqut::load_topology(v_topology);
    const bool nn = muqut::verify_nn_compliance(mapped, device);
    const muqut::EquivalenceReport eq = muqut::check_equivalence(original, mapped);
    std::cout << "nearest-neighbour: " << (nn ? "yes" : "no") << '\n';
    std::cout << "equivalent: " << (eq.equivalent ? "yes" : "no");
    if (!eq.equivalent) std::cout << " (" << eq.reason << ')';
    std::cout << '\n';
    return nn && eq.equivalent ? 0 : 1;
  } catch (const muqut::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const muqut::MappingError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == muqut::MappingError::Kind::TimedOut ? 3 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
