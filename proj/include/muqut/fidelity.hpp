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
 * @file fidelity.hpp
 * @brief Success-rate scoring and physical placement of mapped circuits.
 *
 * A mapped circuit is nearest-neighbour compliant on the subgraph it was
 * solved on. Its footprint (the subgraph's vertices plus the edges its
 * two-qubit gates actually use) can be moved to any place on the device
 * where the same edges exist. Grid devices slide the footprint's bounding
 * box (the H-Grid) over the device and mirror it; other devices enumerate
 * subgraph monomorphisms.
 */

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "muqut/circuit.hpp"
#include "muqut/topology.hpp"

namespace muqut {

/// Product of (1 - error) over noisy gates: edge error for two-qubit gates,
/// vertex error for single-qubit gates. SWAPs are decomposed first. Throws
/// std::invalid_argument when a needed calibration entry is missing.
double success_rate(const QuantumCircuit& circuit, const CalibrationData& calibration,
                    const NativeGateSet& gates);

/// Subgraph vertices plus the edges used by two-qubit gates of `mapped`.
TopologyGraph footprint(const QuantumCircuit& mapped, const TopologyGraph& subgraph);

struct HGrid {
  int hqh = 0;  ///< H-Grid width (columns)
  int hqv = 0;  ///< H-Grid height (rows)
  int qh = 0;   ///< device width
  int qv = 0;   ///< device height
  GridCoord origin;         ///< top-left corner of the footprint's bounding box
  GridCoord device_origin;  ///< top-left corner of the device's bounding box

  [[nodiscard]] int offsets() const noexcept { return (qh - hqh + 1) * (qv - hqv + 1); }
};

/// nullopt when either graph lacks grid coordinates (use embeddings
/// instead). Throws std::invalid_argument when the footprint is larger than
/// the device.
std::optional<HGrid> extract_hgrid(const TopologyGraph& footprint, const TopologyGraph& device);

struct GridOrigin {
  int row_offset = 0;
  int col_offset = 0;
  bool mirror_h = false;  ///< columns reversed
  bool mirror_v = false;  ///< rows reversed

  friend bool operator==(const GridOrigin&, const GridOrigin&) = default;
};

struct PlacementCandidate {
  std::vector<std::pair<Vertex, Vertex>> assignment;  ///< (footprint vertex, device vertex), sorted
  std::optional<GridOrigin> origin;
  double score = 0.0;
};

struct PlacementEnumeration {
  std::vector<PlacementCandidate> candidates;  ///< valid and deduplicated
  int offsets = 0;                             ///< grid positions tried
  std::size_t generated = 0;                   ///< offsets x mirrors, before filtering
};

/// Slides and mirrors the footprint over the device grid. Candidates that
/// hit a missing device vertex or edge are dropped.
PlacementEnumeration enumerate_placements(const HGrid& hgrid, const TopologyGraph& footprint,
                                          const TopologyGraph& device);

/// Injective maps of the footprint into the device that send every footprint
/// edge to a device edge, in lexicographic order, at most `limit` of them.
std::vector<PlacementCandidate> enumerate_embeddings(const TopologyGraph& footprint,
                                                     const TopologyGraph& device, std::size_t limit);

/// The candidate that leaves every vertex where it is.
PlacementCandidate identity_placement(const TopologyGraph& footprint);

/// Rewrites operands (and the layout line) through the assignment.
QuantumCircuit relabel(const QuantumCircuit& circuit,
                       const std::vector<std::pair<Vertex, Vertex>>& assignment);

struct PlacementReport {
  std::vector<PlacementCandidate> candidates;  ///< scored
  std::size_t best = 0;                        ///< index into candidates
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
};

/// Scores each candidate by the success rate of the relabeled circuit. Ties
/// go to the lexicographically smallest assignment. Throws
/// std::invalid_argument on an empty candidate list.
PlacementReport best_placement(std::vector<PlacementCandidate> candidates,
                               const QuantumCircuit& nn_circuit, const CalibrationData& calibration,
                               const NativeGateSet& gates);

}  // namespace muqut
