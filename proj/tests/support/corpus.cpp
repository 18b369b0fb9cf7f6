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

#include "corpus.hpp"

#include "muqut/rng.hpp"
#include "oracles.hpp"

namespace muqut::testing {

MappingInstance random_instance(const TopologyGraph& device, std::uint64_t seed, int max_qubits,
                                int levels) {
  Rng rng(derive_seed(seed, 0));
  const int n = 2 + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(max_qubits - 1)));
  MappingInstance inst;
  inst.circuit = random_circuit(n, levels, derive_seed(seed, 1));
  const SubgraphList list =
      extract_subgraphs(device, {static_cast<std::size_t>(n), 50, 0.5, derive_seed(seed, 2)});
  inst.subgraph = list.graphs.at(uniform_below(rng, list.graphs.size()));
  inst.initial = inst.subgraph.vertices();
  shuffle(inst.initial, rng);
  return inst;
}

}  // namespace muqut::testing
