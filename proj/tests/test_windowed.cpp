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

#include "corpus.hpp"
#include "muqut/error.hpp"
#include "muqut/windowed.hpp"
#include "oracles.hpp"

namespace muqut {
namespace {

std::string data(const char* name) { return std::string(MUQUT_DATA_DIR) + "/" + name; }

QuantumCircuit chain(int levels) {
  QuantumCircuit c(2);
  for (int i = 0; i < levels; ++i) c.add(Gate::cx(i % 2, 1 - i % 2));
  return c;
}

// Brute force over every placement: can some level never have all of its
// pairs on edges at once?
bool has_unrealizable_level(const QuantumCircuit& circuit, const TopologyGraph& g) {
  const auto perms = testing::permutations(g.vertices());
  for (const InteractionSet& set : interactions(levelize(circuit))) {
    const bool some = std::any_of(perms.begin(), perms.end(), [&](const std::vector<Vertex>& at) {
      return std::all_of(set.pairs.begin(), set.pairs.end(), [&](const auto& pq) {
        return g.has_edge(at[static_cast<std::size_t>(pq.first)], at[static_cast<std::size_t>(pq.second)]);
      });
    });
    if (!some) return true;
  }
  return false;
}

SolverOptions quick() {
  SolverOptions o;
  o.time_limit = std::chrono::duration<double>(20.0);
  return o;
}

TEST(Windows, SplitExamples) {
  using R = std::vector<std::pair<int, int>>;
  EXPECT_EQ(split_windows(chain(4), 2).windows, (R{{1, 2}, {3, 4}}));
  EXPECT_EQ(split_windows(chain(4), 6).windows, (R{{1, 4}}));
  EXPECT_EQ(split_windows(chain(5), 2).windows, (R{{1, 2}, {3, 4}, {5, 5}}));
  EXPECT_EQ(split_windows(chain(5), 2).window_size, 2);
  EXPECT_TRUE(split_windows(QuantumCircuit(2), 3).windows.empty());
  EXPECT_THROW(split_windows(chain(4), 0), std::invalid_argument);
}

TEST(Windows, SplitPartitionsLevels) {
  for (int k = 1; k <= 9; ++k) {
    for (int w = 1; w <= 10; ++w) {
      const WindowPlan plan = split_windows(chain(k), w);
      ASSERT_EQ(static_cast<int>(plan.windows.size()), (k + w - 1) / w);
      int next = 1;
      for (std::size_t i = 0; i < plan.windows.size(); ++i) {
        const auto [a, b] = plan.windows[i];
        EXPECT_EQ(a, next);
        if (i + 1 < plan.windows.size()) {
          EXPECT_EQ(b - a + 1, w);
        }
        next = b + 1;
      }
      EXPECT_EQ(next, k + 1);
    }
  }
}

TEST(Windows, WindowCircuitKeepsOnlyItsLevels) {
  const QuantumCircuit c = levelize(load_circuit(data("fig1a.qc")));
  const QuantumCircuit w = window_circuit(c, {3, 4});
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.gates()[0], Gate::cx(1, 2));
  EXPECT_EQ(w.levels().size(), 2u);
}

TEST(Compliance, Examples) {
  const QuantumCircuit fig4a = load_circuit(data("fig4a.qc"));
  const TopologyGraph linear = load_topology(data("linear4.topo"));
  EXPECT_FALSE(verify_nn_compliance(fig4a, linear));
  EXPECT_TRUE(verify_nn_compliance(QuantumCircuit(4), linear));
  QuantumCircuit routed(4);
  routed.add(Gate::swap(0, 2, true));
  EXPECT_FALSE(verify_nn_compliance(routed, linear));
}

// The one-SWAP answer on the line: after level 3 the operands of the second
// CNOT trade places, so the last two CNOTs run on edges.
QuantumCircuit one_swap_line() {
  return parse_circuit(
      "qubits 4\nlayout 0,1,2,3\nx 3\nx 2\ncx 2,1\nrswap 0,1\ncx 2,1\ncx 3,2\n");
}

TEST(Equivalence, OneSwapLineCircuit) {
  const QuantumCircuit original = load_circuit(data("fig4a.qc"));
  const QuantumCircuit mapped = one_swap_line();
  EXPECT_TRUE(verify_nn_compliance(mapped, load_topology(data("linear4.topo"))));
  const EquivalenceReport r = check_equivalence(original, mapped);
  EXPECT_TRUE(r.equivalent) << r.reason;
  EXPECT_EQ(r.final_layout, (std::vector<Vertex>{1, 0, 2, 3}));
  EXPECT_TRUE(testing::same_action(original, mapped, r.final_layout, 1));
  EXPECT_FALSE(testing::same_action(original, mapped, {0, 1, 2, 3}, 1));
}

TEST(Equivalence, IdentityMappingWithoutSwaps) {
  const QuantumCircuit c = load_circuit(data("fig1a.qc"));
  EXPECT_TRUE(verify_equivalence(c, c));
  EXPECT_TRUE(check_equivalence(c, c).final_layout == (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(Equivalence, MutationsAreCaught) {
  const QuantumCircuit original = load_circuit(data("fig4a.qc"));
  const QuantumCircuit good = one_swap_line();
  const auto& gates = good.gates();
  for (std::size_t drop = 0; drop < gates.size(); ++drop) {
    QuantumCircuit bad(4);
    bad.set_layout(*good.layout());
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (i != drop) bad.add(gates[i]);
    }
    EXPECT_FALSE(verify_equivalence(original, bad)) << "dropped gate " << drop;
  }
  // Reversed CNOT direction.
  QuantumCircuit flipped(4);
  flipped.set_layout(*good.layout());
  for (const Gate& g : gates) flipped.add(g.kind == GateKind::Cx && g.operands[1] == 2 ? Gate::cx(2, 3) : g);
  EXPECT_FALSE(verify_equivalence(original, flipped));
  // A gate added on top.
  QuantumCircuit extra = good;
  extra.add(Gate::single("h", 0));
  EXPECT_FALSE(verify_equivalence(original, extra));
}

TEST(Windowed, MotivatingExampleTotals) {
  const QuantumCircuit c = load_circuit(data("fig4a.qc"));
  const NativeGateSet ibm = native_gate_set("ibm");
  struct Case {
    const char* topo;
    std::vector<Vertex> initial;
    int swaps;
  };
  for (const Case& cs : {Case{"linear4.topo", {0, 1, 2, 3}, 2}, Case{"t4.topo", {0, 1, 2, 3}, 1},
                         Case{"grid4.topo", {0, 2, 1, 3}, 1}}) {
    const TopologyGraph g = load_topology(data(cs.topo));
    const MappingResult r = map_windowed(c, g, cs.initial, 100, quick(), ibm);
    EXPECT_EQ(r.swaps, cs.swaps) << cs.topo;
    EXPECT_TRUE(verify_nn_compliance(r, g));
    EXPECT_TRUE(verify_equivalence(c, r));
  }
}

TEST(Windowed, FullWindowEqualsDirectSolve) {
  const TopologyGraph device = load_topology(data("ibmq16_melbourne.topo"));
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    const testing::MappingInstance inst = testing::random_instance(device, seed, 4, 4);
    const QuantumCircuit lev = levelize(inst.circuit);
    if (lev.levels().empty() || has_unrealizable_level(lev, inst.subgraph)) continue;
    const MappingResult r =
        map_windowed(inst.circuit, inst.subgraph, inst.initial, 1000, quick(), native_gate_set("ibm"));

    MappingProblem p = testing::make_problem(lev, inst.subgraph, inst.initial, 0);
    const SolveResult direct = solve_with_horizon_escalation(p, {}, quick().time_limit);
    ASSERT_TRUE(direct.schedule);
    WindowCircuit piece = schedule_to_circuit(*direct.schedule, lev, r.circuit.num_qubits());
    piece.circuit.set_layout(inst.initial);
    EXPECT_EQ(emit_circuit(r.circuit), emit_circuit(piece.circuit)) << seed;
    EXPECT_EQ(r.final_configuration.assignment, piece.final_configuration.assignment);
  }
}

TEST(Windowed, InfeasibleWindowReportsIndex) {
  // Vertices 2 and 3 form their own component, so the second window's pair
  // {0, 3} can never meet.
  const TopologyGraph g = testing::make_graph(4, {{0, 1}, {2, 3}});
  const QuantumCircuit c = parse_circuit("qubits 4\ncx 0,1\ncx 0,3\n");
  try {
    map_windowed(c, g, {0, 1, 2, 3}, 1, quick(), native_gate_set("ibm"));
    FAIL();
  } catch (const MappingError& e) {
    EXPECT_EQ(e.window(), 1u);
    EXPECT_EQ(e.kind(), MappingError::Kind::Infeasible);
  }
  EXPECT_THROW(map_windowed(c, testing::make_graph(3, {{0, 1}, {1, 2}}), {0, 1, 2}, 1, quick(),
                            native_gate_set("ibm")),
               std::invalid_argument);
}

class MappingFuzz : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(MappingFuzz, CompliantEquivalentAndChained) {
  static const TopologyGraph device = load_topology(data("ibmq16_melbourne.topo"));
  const std::uint64_t seed = GetParam();
  const testing::MappingInstance inst = testing::random_instance(device, seed, 5, 6);
  const int w = 1 + static_cast<int>(seed % 4);
  const NativeGateSet ibm = native_gate_set("ibm");
  MappingResult r;
  try {
    r = map_windowed(inst.circuit, inst.subgraph, inst.initial, w, quick(), ibm);
  } catch (const MappingError& e) {
    EXPECT_EQ(e.kind(), MappingError::Kind::Infeasible);
    EXPECT_TRUE(has_unrealizable_level(inst.circuit, inst.subgraph)) << e.what();
    return;
  }

  EXPECT_TRUE(verify_nn_compliance(r, inst.subgraph));
  EXPECT_TRUE(verify_equivalence(inst.circuit, r));
  EXPECT_TRUE(testing::same_action(inst.circuit, r.circuit, r.final_configuration.assignment, seed));

  std::vector<Vertex> carried = inst.initial;
  int depth = 0, swaps = 0;
  for (const WindowResult& wr : r.windows) {
    EXPECT_EQ(wr.schedule.configurations.front().assignment, carried);
    carried = wr.schedule.configurations.back().assignment;
    depth += wr.schedule.depth();
    swaps += static_cast<int>(wr.schedule.swaps.size());
  }
  EXPECT_EQ(carried, r.final_configuration.assignment);
  EXPECT_EQ(depth, r.depth);
  EXPECT_EQ(swaps, r.swaps);

  std::size_t routing = 0, cnots = 0, noisy_singles = 0;
  for (const Gate& g : r.circuit.gates()) {
    routing += g.routing;
    cnots += g.kind == GateKind::Cx;
    noisy_singles += !g.is_two_qubit() && ibm.is_noisy(g);
  }
  EXPECT_EQ(routing, static_cast<std::size_t>(r.swaps));
  EXPECT_EQ(r.counts.noisy, 3 * routing + cnots + noisy_singles);
}

INSTANTIATE_TEST_SUITE_P(Seeds, MappingFuzz, ::testing::Range<std::uint64_t>(1, 151));

}  // namespace
}  // namespace muqut
