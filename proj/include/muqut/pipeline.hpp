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

/**
 * @file pipeline.hpp
 * @brief End-to-end mapping run: subgraphs x configurations -> windowed
 *        mapping -> placement -> report.
 *
 * Report (report.json) layout, schema version 1:
 * @code
 * {
 *   "schema": "muqut-report", "schema_version": 1,
 *   "input": {"circuit": ..., "topology": ..., "qubits": n, "levels": k, "gates": ...},
 *   "settings": {"seed", "attempts", "probability", "window_size", "configs",
 *                "horizon", "horizon_max", "time_limit", "placement_mode",
 *                "placement_limit", "gates"},
 *   "subgraphs": {"found": [[vertices...], ...], "attempts", "stalled", "seed"},
 *   "candidates": [{"subgraph", "config", "initial", "status", "swaps",
 *                   "depth", "gates_total", "gates_noisy", "fidelity_initial",
 *                   "fidelity_best", "improvement", "fidelity_min",
 *                   "fidelity_avg", "fidelity_max", "placements",
 *                   "best_assignment", "solver": {"nodes", "horizons"}}],
 *   "best": {"candidate": index, ...same fields...} | null,
 *   "timings": {...}   // only with RunConfig::timings
 * }
 * @endcode
 * summary.csv has the header
 * `kind,subgraph,config,window_size,gates_total,gates_noisy,swaps,depth,fidelity_initial,fidelity_best,improvement`,
 * one `candidate` row per mapped candidate and `min`, `avg`, `max` rows.
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "muqut/circuit.hpp"
#include "muqut/fidelity.hpp"
#include "muqut/topology.hpp"
#include "muqut/windowed.hpp"

namespace muqut {

enum class PlacementMode { Auto, Grid, General };

struct RunConfig {
  std::string circuit_path;
  std::string topology_path;
  std::size_t attempts = 200;
  double probability = 0.5;
  std::uint64_t seed = 1;
  int window_size = 1;
  std::size_t configs = 1;  ///< initial configurations sampled per subgraph
  std::optional<int> horizon;
  std::optional<int> horizon_max;
  double time_limit = 60.0;  ///< seconds per window solve
  PlacementMode placement_mode = PlacementMode::Auto;
  std::size_t placement_limit = 1000;
  std::string gates = "ibm";
  std::size_t jobs = 1;
  std::string out_dir;  ///< empty: nothing written
  bool timings = false;
};

/// Throws std::invalid_argument on counts below 1 or p outside (0, 1].
void validate_config(const RunConfig& config);

enum class CandidateStatus { Mapped, Infeasible, TimedOut };

struct CandidateRecord {
  std::size_t subgraph = 0;
  std::size_t config = 0;
  std::vector<Vertex> initial;  ///< logical qubit -> device vertex
  CandidateStatus status = CandidateStatus::Infeasible;
  bool incumbent = false;  ///< some window stopped at the time limit
  std::string message;
  int swaps = 0;
  int depth = 0;
  GateCounts counts;
  double fidelity_initial = 0.0;  ///< placement where the subgraph was extracted
  double fidelity_best = 0.0;
  double fidelity_min = 0.0;
  double fidelity_avg = 0.0;
  double fidelity_max = 0.0;
  std::size_t placements = 0;
  std::vector<std::pair<Vertex, Vertex>> best_assignment;
  std::uint64_t nodes = 0;
  std::vector<std::vector<int>> horizons;  ///< per window
  QuantumCircuit placed;                   ///< best placement of this candidate
  std::optional<MappingResult> mapping;

  [[nodiscard]] double improvement() const {
    return fidelity_initial > 0.0 ? fidelity_best / fidelity_initial : 1.0;
  }
};

struct RunReport {
  RunConfig config;
  int qubits = 0;
  int levels = 0;
  std::size_t gates = 0;
  SubgraphList subgraphs;
  std::vector<CandidateRecord> candidates;
  std::optional<std::size_t> best;
  double seconds_total = 0.0;
};

/// Runs the whole pipeline on parsed inputs. Throws std::invalid_argument
/// when the circuit is wider than the device.
RunReport run_pipeline(const RunConfig& config, const QuantumCircuit& circuit,
                       const TopologyGraph& device);

/// Loads the inputs named in `config`, runs, and writes report.json,
/// summary.csv and mapped.qc to `config.out_dir` when it is set.
RunReport run_pipeline(const RunConfig& config);

std::string report_json(const RunReport& report);
std::string summary_csv(const RunReport& report);

/// Writes the three output files; throws std::runtime_error when a file
/// cannot be written.
void write_outputs(const RunReport& report, const std::string& dir);

/// 0 mapped, 2 no candidate mapped, 3 best candidate used a timed-out window.
int exit_code(const RunReport& report);

}  // namespace muqut
