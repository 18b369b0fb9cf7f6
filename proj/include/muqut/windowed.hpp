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
 * @file windowed.hpp
 * @brief Window-by-window mapping and the two output verifiers.
 *
 * Windows are runs of whole levels. Each window is solved exactly starting
 * from the configuration the previous window ended in; there is no
 * backtracking across windows.
 */

#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "muqut/circuit.hpp"
#include "muqut/nn_ilp.hpp"
#include "muqut/topology.hpp"

namespace muqut {

struct WindowPlan {
  int window_size = 1;
  std::vector<std::pair<int, int>> windows;  ///< 1-based inclusive level ranges
};

/// Throws std::invalid_argument when w < 1.
WindowPlan split_windows(const QuantumCircuit& circuit, int w);

/// Gates of levels [first, last] (1-based, inclusive) as a levelized circuit
/// over the same qubits.
QuantumCircuit window_circuit(const QuantumCircuit& circuit, std::pair<int, int> levels);

struct SolverOptions {
  HorizonOptions horizons;
  std::chrono::duration<double> time_limit{60.0};  ///< per window
};

struct WindowResult {
  std::pair<int, int> levels;
  Schedule schedule;
  SolverStats stats;
  bool timed_out = false;  ///< schedule is an incumbent, not a proven optimum
};

struct MappingResult {
  QuantumCircuit circuit;  ///< over device vertex ids; layout() holds the initial placement
  Configuration initial;
  Configuration final_configuration;
  std::vector<WindowResult> windows;
  TopologyGraph subgraph;
  int swaps = 0;
  int depth = 0;      ///< sum over windows of (last activation + 1)
  GateCounts counts;  ///< after native SWAP decomposition
  bool timed_out = false;
};

/// Throws MappingError (with the window index) when a window is infeasible
/// up to the maximum horizon or times out without an incumbent, and
/// std::invalid_argument on malformed input.
MappingResult map_windowed(const QuantumCircuit& circuit, const TopologyGraph& subgraph,
                           const std::vector<Vertex>& initial, int window_size,
                           const SolverOptions& options, const NativeGateSet& gates);

/// True iff every two-qubit gate (SWAPs included) acts on an edge.
bool verify_nn_compliance(const QuantumCircuit& mapped, const TopologyGraph& subgraph);
bool verify_nn_compliance(const MappingResult& result, const TopologyGraph& subgraph);

struct EquivalenceReport {
  bool equivalent = false;
  std::string reason;                 ///< first mismatch, empty when equivalent
  std::vector<Vertex> final_layout;   ///< logical qubit -> vertex after replay
};

/// Replays `mapped` with a running logical-to-physical permutation that
/// starts at mapped.layout() (identity when absent). Routing SWAPs update the
/// permutation; every other gate must be, under the permutation, the next
/// pending original gate on each of its qubits.
EquivalenceReport check_equivalence(const QuantumCircuit& original, const QuantumCircuit& mapped);
bool verify_equivalence(const QuantumCircuit& original, const QuantumCircuit& mapped);
bool verify_equivalence(const QuantumCircuit& original, const MappingResult& result);

}  // namespace muqut
