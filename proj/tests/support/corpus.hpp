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

// Seeded mapping workloads shared by the fuzz tests and the acceptance run.

#pragma once

#include <cstdint>
#include <vector>

#include "muqut/circuit.hpp"
#include "muqut/topology.hpp"

namespace muqut::testing {

struct MappingInstance {
  QuantumCircuit circuit;
  TopologyGraph subgraph;       ///< induced on the device, original vertex ids
  std::vector<Vertex> initial;  ///< random bijection qubit -> subgraph vertex
};

/// A random circuit on 2..max_qubits qubits with at most `levels` levels,
/// one subgraph extracted from `device` for it, and a random placement.
MappingInstance random_instance(const TopologyGraph& device, std::uint64_t seed, int max_qubits,
                                int levels);

}  // namespace muqut::testing
