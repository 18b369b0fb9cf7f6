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

#include <set>

#include "muqut/nn_ilp.hpp"
#include "oracles.hpp"

namespace muqut {
namespace {

using testing::bfs_optimum;
using testing::make_graph;
using testing::make_problem;

constexpr std::chrono::seconds kLimit{30};

const char* kFig4a = "qubits 4\nx 3\nx 2\ncx 2,1\ncx 2,0\ncx 3,2\n";

TopologyGraph linear4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}}); }
TopologyGraph tee4() { return make_graph(4, {{0, 1}, {1, 2}, {1, 3}}); }
TopologyGraph grid4() { return make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

Schedule solve_fig4a(const TopologyGraph& g, const std::vector<Vertex>& initial) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), g, initial, 0);
  const SolveResult r = solve_with_horizon_escalation(p, {}, kLimit);
  EXPECT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_TRUE(r.schedule.has_value());
  return r.schedule.value_or(Schedule{});
}

TEST(NnIlp, AdjacentPairNeedsNothing) {
  MappingProblem p;
  p.subgraph = make_graph(2, {{0, 1}});
  p.initial = {0, 1};
  p.interactions = {InteractionSet{1, {{0, 1}}}};
  p.horizon = 1;
  const IlpModel model = build_model(p);
  const SolveResult r = solve(model, kLimit);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.schedule->objective, 0);
  EXPECT_TRUE(r.schedule->swaps.empty());
  EXPECT_EQ(r.schedule->activations, std::vector<int>{0});
}

TEST(NnIlp, CompliantCircuitHasTriangularObjective) {
  const QuantumCircuit c = parse_circuit("qubits 3\ncx 0,1\ncx 1,2\ncx 0,1\ncx 1,2\n");
  const MappingProblem p = make_problem(c, make_graph(3, {{0, 1}, {1, 2}}), {0, 1, 2}, 3);
  const SolveResult r = solve(build_model(p), kLimit);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.schedule->objective, 0 + 1 + 2 + 3);
  EXPECT_TRUE(r.schedule->swaps.empty());
}

// The delay objective comes first. On the path, the one-SWAP schedule has to
// wait for the busy qubits and costs 8; two SWAPs hidden behind the other
// levels reach the floor of 6. On the T, swapping l3 into the hub serves all
// three pairs.
TEST(NnIlp, MotivatingExampleSwapCounts) {
  const Schedule path = solve_fig4a(linear4(), {0, 1, 2, 3});
  EXPECT_EQ(path.objective, 6);
  EXPECT_EQ(path.swaps.size(), 2u);
  const Schedule tee = solve_fig4a(tee4(), {0, 1, 2, 3});
  EXPECT_EQ(tee.objective, 6);
  EXPECT_EQ(tee.swaps.size(), 1u);
  // l1 -> a, l2 -> c, l3 -> b, l4 -> d on the 4-cycle a-b-c-d.
  const Schedule grid = solve_fig4a(grid4(), {0, 2, 1, 3});
  EXPECT_EQ(grid.objective, 6);
  EXPECT_EQ(grid.swaps.size(), 1u);
}

TEST(NnIlp, HorizonShorterThanLevelsIsRejected) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), linear4(), {0, 1, 2, 3}, 2);
  EXPECT_THROW(build_model(p), std::invalid_argument);
}

TEST(NnIlp, MalformedConfigurationIsRejected) {
  MappingProblem p = make_problem(parse_circuit(kFig4a), linear4(), {0, 1, 1, 3}, 5);
  EXPECT_THROW(build_model(p), std::invalid_argument);
  p.initial = {0, 1, 2, 7};
  EXPECT_THROW(build_model(p), std::invalid_argument);
}

TEST(NnIlp, DisconnectedPairIsInfeasibleAtEveryHorizon) {
  MappingProblem p;
  p.subgraph = make_graph(4, {{0, 1}, {2, 3}});
  p.initial = {0, 1, 2, 3};
  p.interactions = {InteractionSet{1, {{0, 2}}}};
  const SolveResult r = solve_with_horizon_escalation(p, {}, kLimit);
  EXPECT_EQ(r.status, SolveStatus::Infeasible);
  EXPECT_FALSE(r.schedule);
  EXPECT_EQ(first_unrealizable_level(p), 0);
  p.horizon = 6;
  EXPECT_EQ(solve(build_model(p), kLimit).status, SolveStatus::Infeasible);
}

TEST(NnIlp, TightHorizonSufficesWhenSwapsOverlapLevels) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), tee4(), {0, 1, 2, 3}, 0);
  HorizonOptions h;
  h.initial = p.last_level();
  const SolveResult r = solve_with_horizon_escalation(p, h, kLimit);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.schedule->swaps.size(), 1u);
  EXPECT_EQ(r.stats.horizons_tried, std::vector<int>{p.last_level()});
}

TEST(NnIlp, EscalatesFromTightHorizon) {
  const QuantumCircuit c = parse_circuit("qubits 3\ncx 0,2\n");
  const MappingProblem p = make_problem(c, make_graph(3, {{0, 1}, {1, 2}}), {0, 1, 2}, 0);
  HorizonOptions h;
  h.initial = 0;
  const SolveResult r = solve_with_horizon_escalation(p, h, kLimit);
  ASSERT_EQ(r.status, SolveStatus::Optimal);
  EXPECT_EQ(r.stats.horizons_tried, (std::vector<int>{0, 2}));
  EXPECT_EQ(r.schedule->horizon, 2);
  EXPECT_EQ(r.schedule->objective, 1);
  EXPECT_EQ(r.schedule->swaps.size(), 1u);
}

TEST(NnIlp, DefaultHorizonCountsMissingAdjacencies) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), linear4(), {0, 1, 2, 3}, 0);
  // Pairs (1,2), (0,2), (2,3): only (0,2) is not an edge of 0-1-2-3.
  EXPECT_EQ(default_initial_horizon(p), 3 + 2);
  EXPECT_EQ(default_maximum_horizon(p), 3 + 12);
}

TEST(NnIlp, MatchesBfsOracleOnSmallProblems) {
  int checked = 0;
  for (int n = 2; n <= 4; ++n) {
    for (const TopologyGraph& g : testing::connected_graphs(n)) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const QuantumCircuit c = testing::random_circuit(n, 3, seed * 31 + static_cast<std::uint64_t>(n));
        if (c.empty()) continue;
        const auto perms = testing::permutations(g.vertices());
        for (std::size_t pi = 0; pi < perms.size(); pi += 5) {
          const MappingProblem p = make_problem(c, g, perms[pi], 0);
          const SolveResult r = solve_with_horizon_escalation(p, {}, kLimit);
          ASSERT_NE(r.status, SolveStatus::TimedOut);
          if (r.status == SolveStatus::Infeasible) {
            MappingProblem widest = p;
            widest.horizon = default_maximum_horizon(p);
            EXPECT_FALSE(bfs_optimum(widest).has_value());
            continue;
          }
          MappingProblem at = p;
          at.horizon = r.schedule->horizon;
          const auto oracle = bfs_optimum(at);
          ASSERT_TRUE(oracle.has_value());
          EXPECT_EQ(r.schedule->objective, oracle->objective);
          EXPECT_EQ(static_cast<int>(r.schedule->swaps.size()), oracle->swaps);
          EXPECT_EQ(r.schedule->swaps, oracle->swap_list);
          for (int earlier : r.stats.horizons_tried) {
            if (earlier == at.horizon) continue;
            MappingProblem e = p;
            e.horizon = earlier;
            EXPECT_FALSE(bfs_optimum(e).has_value()) << "horizon " << earlier;
          }
          EXPECT_TRUE(check_schedule(p, *r.schedule).empty());
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(NnIlp, CheckerRejectsMutations) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), tee4(), {0, 1, 2, 3}, 0);
  const Schedule s = *solve_with_horizon_escalation(p, {}, kLimit).schedule;
  ASSERT_TRUE(check_schedule(p, s).empty());

  Schedule bad = s;
  bad.objective += 1;
  EXPECT_FALSE(check_schedule(p, bad).empty());

  bad = s;
  bad.activations.back() -= 1;
  bad.objective -= 1;
  EXPECT_FALSE(check_schedule(p, bad).empty());

  bad = s;
  bad.swaps.erase(bad.swaps.begin());
  EXPECT_FALSE(check_schedule(p, bad).empty());

  bad = s;
  bad.configurations[1].assignment[0] = bad.configurations[1].assignment[1];
  EXPECT_FALSE(check_schedule(p, bad).empty());
}

TEST(NnIlp, ScheduleInvariantsHold) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), tee4(), {0, 1, 2, 3}, 0);
  const Schedule s = *solve_with_horizon_escalation(p, {}, kLimit).schedule;
  for (std::size_t i = 1; i < s.activations.size(); ++i) EXPECT_LT(s.activations[i - 1], s.activations[i]);
  std::map<int, std::set<Vertex>> touched;
  for (const SwapEvent& e : s.swaps) {
    EXPECT_TRUE(touched[e.cycle].insert(e.edge.first).second);
    EXPECT_TRUE(touched[e.cycle].insert(e.edge.second).second);
  }
  for (std::size_t i = 0; i < s.met.size(); ++i) EXPECT_LE(s.met[i], s.activations[i]);
}

TEST(NnIlp, ZeroSwapScheduleOnlyRelabels) {
  const QuantumCircuit c = parse_circuit("qubits 3\nh 0\ncx 0,1\ncx 1,2\n");
  const TopologyGraph g = make_graph(3, {{0, 1}, {1, 2}});
  const MappingProblem p = make_problem(c, g, {0, 1, 2}, 2);
  const Schedule s = *solve(build_model(p), kLimit).schedule;
  ASSERT_TRUE(s.swaps.empty());
  const WindowCircuit w = schedule_to_circuit(s, levelize(c), 3);
  EXPECT_EQ(w.circuit.gates(), c.gates());
  EXPECT_EQ(w.final_configuration.assignment, (std::vector<Vertex>{0, 1, 2}));
}

TEST(NnIlp, ScheduleToCircuitRejectsMismatch) {
  const QuantumCircuit c = parse_circuit("qubits 2\ncx 0,1\ncx 0,1\n");
  MappingProblem p = make_problem(c, make_graph(2, {{0, 1}}), {0, 1}, 1);
  const Schedule s = *solve(build_model(p), kLimit).schedule;
  EXPECT_THROW(schedule_to_circuit(s, parse_circuit("qubits 2\ncx 0,1\n"), 2), std::invalid_argument);
}

TEST(NnIlp, LinearSchedulePermutesOutputs) {
  const Schedule s = solve_fig4a(linear4(), {0, 1, 2, 3});
  const WindowCircuit w = schedule_to_circuit(s, levelize(parse_circuit(kFig4a)), 4);
  int swaps = 0;
  for (const Gate& g : w.circuit.gates()) {
    if (g.is_two_qubit()) {
      EXPECT_TRUE(linear4().has_edge(g.operands[0], g.operands[1]));
    }
    swaps += g.is_swap() ? 1 : 0;
  }
  EXPECT_EQ(swaps, 2);
  EXPECT_NE(w.final_configuration.assignment, (std::vector<Vertex>{0, 1, 2, 3}));
}

TEST(NnIlp, ExportedObjectiveUsesCycleIndices) {
  MappingProblem p;
  p.subgraph = make_graph(2, {{0, 1}});
  p.initial = {0, 1};
  p.interactions = {InteractionSet{1, {{0, 1}}}, InteractionSet{2, {{0, 1}}}};
  p.horizon = 2;
  const std::string lp = export_lp(build_model(p));
  EXPECT_NE(lp.find("Minimize\n obj: 0 a_0_0 + 1 a_0_1 + 2 a_0_2 + 0 a_1_0 + 1 a_1_1 + 2 a_1_2\n"),
            std::string::npos);
  EXPECT_NE(lp.find("Subject To\n"), std::string::npos);
  EXPECT_NE(lp.find("Binary\n"), std::string::npos);
  EXPECT_EQ(lp.substr(lp.size() - 4), "End\n");
}

TEST(NnIlp, ModelHasEveryVariableFamily) {
  const MappingProblem p = make_problem(parse_circuit(kFig4a), linear4(), {0, 1, 2, 3}, 5);
  const IlpModel m = build_model(p);
  std::set<std::string> names;
  for (const auto& [name, count] : m.family_sizes()) {
    EXPECT_GT(count, 0u) << name;
    names.insert(name);
  }
  for (const char* f : {"a", "m", "x", "s", "n", "pp", "eb", "b", "bv", "sb", "u", "c", "y"}) {
    EXPECT_TRUE(names.count(f)) << f;
  }
  std::size_t total = 0;
  for (const auto& [name, count] : m.family_sizes()) total += count;
  EXPECT_EQ(total, m.lp().num_vars());
}

TEST(NnIlp, TimeLimitIsHonoured) {
  const QuantumCircuit c = testing::random_circuit(6, 8, 99, 0.9);
  const TopologyGraph g = make_graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  const MappingProblem p = make_problem(c, g, {5, 0, 4, 1, 3, 2}, 0);
  const auto start = std::chrono::steady_clock::now();
  const SolveResult r = solve_with_horizon_escalation(p, {}, std::chrono::milliseconds(200));
  const double took = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(took, 5.0);
  if (r.status == SolveStatus::TimedOut && r.schedule) {
    EXPECT_TRUE(check_schedule(p, *r.schedule).empty());
  }
}

}  // namespace
}  // namespace muqut
