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
 * @file nn_ilp.hpp
 * @brief Exact nearest-neighbour SWAP scheduling as a 0-1 ILP.
 *
 * A window of levels 0..k must be activated in order, one level per cycle
 * at most, and a level may only be activated in a cycle where every qubit
 * pair of its interaction set sits on an edge of the subgraph. Between
 * cycles the qubits move by disjoint edge SWAPs. The objective is the sum of
 * activation cycles.
 *
 * Variable families (all binary, indices are local: vertex positions in the
 * subgraph's sorted vertex list, logical qubits, levels, cycles):
 *
 * | name              | meaning                                                  |
 * |-------------------|----------------------------------------------------------|
 * | a_i_t             | level i activated in cycle t                             |
 * | m_i_t             | 1 while interaction i is not yet met                     |
 * | n_p_q_t           | qubits p, q adjacent in cycle t                          |
 * | pp_p_v_q_w_t      | p at v and q at w in cycle t                             |
 * | eb_i_t            | interaction i met but level i still pending after t      |
 * | b_q_t             | qubit q may not take part in a SWAP in cycle t           |
 * | bv_v_q_t          | b_q_t and q sits at v                                    |
 * | sb_v_w_t          | SWAP on edge (v, w) forbidden in cycle t                 |
 * | x_v_q_t           | qubit q at vertex v in cycle t                           |
 * | u_v_q_t           | q stays at v into cycle t                                |
 * | c_v_q_t           | q moves onto v into cycle t                              |
 * | y_v_w_q_t         | SWAP (v, w) in cycle t while q is at w (move helper)     |
 * | s_v_w_t           | SWAP on edge (v, w) in cycle t, effective in t+1         |
 */

#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "muqut/bb_solver.hpp"
#include "muqut/circuit.hpp"
#include "muqut/linear_model.hpp"
#include "muqut/topology.hpp"

namespace muqut {

/// Bijection from logical qubits to subgraph vertices at one cycle.
struct Configuration {
  int cycle = 0;
  std::vector<Vertex> assignment;  ///< assignment[q] = vertex holding q

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct MappingProblem {
  std::vector<InteractionSet> interactions;  ///< levels 0..k of the window
  TopologyGraph subgraph;
  std::vector<Vertex> initial;  ///< initial[q] = vertex of logical qubit q
  int horizon = 0;              ///< last usable cycle T

  [[nodiscard]] int num_qubits() const noexcept { return static_cast<int>(initial.size()); }
  [[nodiscard]] int last_level() const noexcept {
    return static_cast<int>(interactions.size()) - 1;
  }
};

/// Throws std::invalid_argument unless `initial` is a bijection onto the
/// subgraph's vertices and every interaction pair names a valid qubit.
void validate_problem(const MappingProblem& problem);

/// Index of the first level whose pairs cannot be adjacent simultaneously
/// under any placement on the subgraph, if one exists. Such a problem is
/// infeasible at every horizon.
std::optional<int> first_unrealizable_level(const MappingProblem& problem);

struct SwapEvent {
  int cycle = 0;
  Edge edge;  ///< subgraph vertex ids, (min, max)

  friend auto operator<=>(const SwapEvent&, const SwapEvent&) = default;
};

struct Schedule {
  std::vector<SwapEvent> swaps;              ///< sorted by (cycle, edge)
  std::vector<int> activations;              ///< activations[i] = cycle of level i
  std::vector<int> met;                      ///< first cycle interaction i counts as met
  std::vector<Configuration> configurations; ///< cycles 0..horizon
  long long objective = 0;                   ///< sum of activation cycles
  int horizon = 0;

  /// Cycles spent by the window: last activation + 1.
  [[nodiscard]] int depth() const noexcept {
    return activations.empty() ? 0 : activations.back() + 1;
  }
};

/// The 0-1 program for one window plus the variable index tables.
class IlpModel {
 public:
  [[nodiscard]] const ilp::LinearModel& lp() const noexcept { return lp_; }
  [[nodiscard]] const MappingProblem& problem() const noexcept { return problem_; }

  [[nodiscard]] int levels() const noexcept { return levels_; }
  [[nodiscard]] int horizon() const noexcept { return horizon_; }
  [[nodiscard]] int qubits() const noexcept { return qubits_; }
  [[nodiscard]] const std::vector<Edge>& local_edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<std::pair<Qubit, Qubit>>& pairs() const noexcept { return pairs_; }

  [[nodiscard]] ilp::VarId a(int level, int t) const { return a_[idx2(level, t)]; }
  [[nodiscard]] ilp::VarId m(int level, int t) const { return m_[idx2(level, t)]; }
  [[nodiscard]] ilp::VarId x(int v, int q, int t) const { return x_[idx3(v, q, t)]; }
  /// SWAP on local edge `e` in cycle t; t in [0, horizon).
  [[nodiscard]] ilp::VarId s(std::size_t e, int t) const {
    return s_[e * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(t)];
  }

  /// Counts per variable family, for reporting.
  [[nodiscard]] std::vector<std::pair<std::string, std::size_t>> family_sizes() const;

 private:
  friend IlpModel build_model(const MappingProblem& problem);

  [[nodiscard]] std::size_t idx2(int i, int t) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(horizon_ + 1) +
           static_cast<std::size_t>(t);
  }
  [[nodiscard]] std::size_t idx3(int v, int q, int t) const {
    return (static_cast<std::size_t>(v) * static_cast<std::size_t>(qubits_) +
            static_cast<std::size_t>(q)) *
               static_cast<std::size_t>(horizon_ + 1) +
           static_cast<std::size_t>(t);
  }

  ilp::LinearModel lp_;
  MappingProblem problem_;
  int levels_ = 0;
  int horizon_ = 0;
  int qubits_ = 0;
  std::vector<Edge> edges_;  // local vertex indices
  std::vector<std::pair<Qubit, Qubit>> pairs_;
  std::vector<ilp::VarId> a_, m_, x_, s_;
  std::vector<std::pair<std::string, std::size_t>> family_sizes_;
};

/// Builds the full constraint system. Throws std::invalid_argument when the
/// problem is malformed or the horizon is shorter than the level count
/// requires (T < k).
IlpModel build_model(const MappingProblem& problem);

enum class SolveStatus { Optimal, Infeasible, TimedOut };

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t conflicts = 0;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::vector<int> horizons_tried;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Schedule> schedule;  ///< optimum, or best incumbent on time-out
  SolverStats stats;
};

/// Exact solve by branch-and-bound. Among schedules with minimal objective
/// the one with fewest SWAPs wins, then the lexicographically smallest SWAP
/// list.
SolveResult solve(const IlpModel& model, std::chrono::duration<double> time_limit);

struct HorizonOptions {
  std::optional<int> initial;  ///< default: k + 2 * (pairs not adjacent under C)
  std::optional<int> maximum;  ///< default: k + 3n
  int step = 2;
};

/// Default first horizon for `problem`'s interactions and initial placement.
int default_initial_horizon(const MappingProblem& problem);
int default_maximum_horizon(const MappingProblem& problem);

/// Solves at T0, T0 + step, ... until a horizon is feasible or Tmax is
/// passed. Returns the optimum of the first feasible horizon; the problem's
/// own `horizon` field is ignored.
SolveResult solve_with_horizon_escalation(const MappingProblem& problem,
                                          const HorizonOptions& horizons,
                                          std::chrono::duration<double> time_limit);

/// Circuit emitted for one solved window: physical gates per cycle (level
/// gates first, then that cycle's routing SWAPs), operands as subgraph
/// vertex ids.
struct WindowCircuit {
  QuantumCircuit circuit;
  Configuration final_configuration;
};

/// `window` must hold exactly the levels the schedule activates (in order).
/// `num_physical` sizes the output circuit (vertex ids must be below it).
/// Throws std::invalid_argument on a schedule/window mismatch.
WindowCircuit schedule_to_circuit(const Schedule& schedule, const QuantumCircuit& window,
                                  int num_physical);

/// LP-format text of the model (see linear_model.hpp for the grammar).
std::string export_lp(const IlpModel& model);

/// Independent semantic check of a schedule against its problem. Returns
/// human-readable violations; empty means valid.
std::vector<std::string> check_schedule(const MappingProblem& problem, const Schedule& schedule);

}  // namespace muqut
