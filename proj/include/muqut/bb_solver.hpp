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
 * @file bb_solver.hpp
 * @brief Depth-first branch-and-bound for pure 0-1 programs.
 *
 * No LP relaxation is solved. Each node fixes one variable and runs
 * bound propagation over all constraints (activity-based, as in
 * pseudo-Boolean solvers) until fixpoint or conflict. Pruning compares a
 * caller-supplied lower bound against the incumbent.
 *
 * Solutions are ranked by the key
 *   (objective, number of ones among `secondary`, tie-break vector)
 * where the tie-break vector prefers a 1 at the first position in which two
 * solutions differ.
 */

#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "muqut/linear_model.hpp"

namespace muqut::ilp {

/// One entry of the branching plan. With `count == 1` the variable is fixed
/// to `values[0]` without an alternative (a dominance fixing); a conflict
/// there fails the node.
struct BranchItem {
  VarId var = 0;
  std::array<std::int8_t, 2> values{0, 1};
  std::uint8_t count = 2;
};

struct LowerBound {
  long long objective = 0;
  long long secondary = 0;
  bool infeasible = false;
};

/// Called at every node with the current partial assignment (-1 = free).
using BoundFn = std::function<LowerBound(std::span<const std::int8_t>)>;

struct SearchSpec {
  std::vector<BranchItem> plan;  ///< branching order; free leftovers branch 0-then-1
  BoundFn bound;                 ///< optional; the objective's min activity is always used too
  std::vector<VarId> secondary;
  std::vector<VarId> tiebreak;
};

enum class SearchStatus { Optimal, Infeasible, TimedOut };

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t fixings = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t pruned = 0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Infeasible;
  std::optional<std::vector<std::int8_t>> best;  ///< incumbent (also on time-out)
  long long objective = 0;
  long long secondary = 0;
  SearchStats stats;
};

using Deadline = std::chrono::steady_clock::time_point;

SearchResult branch_and_bound(const LinearModel& model, const SearchSpec& spec, Deadline deadline);

}  // namespace muqut::ilp
