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
 * @file linear_model.hpp
 * @brief Pure 0-1 integer linear programs with integer coefficients.
 *
 * LP export grammar (CPLEX LP subset, one section keyword per line):
 * @code
 * \ <comment lines>
 * Minimize
 *  obj: <c> <var> + <c> <var> ...
 * Subject To
 *  <name>: <c> <var> - <c> <var> ... <= | >= | = <rhs>
 * Binary
 *  <var> <var> ...
 * End
 * @endcode
 * Every term is written with an explicit coefficient (including 0 and 1),
 * long expressions wrap after eight terms, and constraint names are
 * `<family>_<ordinal within family, from 0>`.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace muqut::ilp {

using VarId = std::uint32_t;

struct Term {
  VarId var;
  int coef;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Constraint {
  std::uint32_t family = 0;  ///< index into LinearModel::families()
  std::vector<Term> terms;
  Sense sense = Sense::LessEqual;
  int rhs = 0;
};

class LinearModel {
 public:
  VarId add_binary(std::string name);
  /// Registers a constraint family name (e.g. "once") and returns its index.
  std::uint32_t add_family(std::string name);
  void add_constraint(std::uint32_t family, std::vector<Term> terms, Sense sense, int rhs);
  void set_objective(std::vector<Term> terms) { objective_ = std::move(terms); }

  [[nodiscard]] std::size_t num_vars() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t num_constraints() const noexcept { return constraints_.size(); }
  [[nodiscard]] const std::string& name(VarId v) const { return names_.at(v); }
  [[nodiscard]] const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] const std::vector<std::string>& families() const noexcept { return families_; }
  [[nodiscard]] const std::vector<Term>& objective() const noexcept { return objective_; }

  /// Objective value of a complete 0/1 assignment.
  [[nodiscard]] long long evaluate(std::span<const std::int8_t> values) const;
  /// Index of the first violated constraint, or -1 when all hold.
  [[nodiscard]] long long first_violation(std::span<const std::int8_t> values) const;

  /// LP-format text; `comment` lines are emitted as `\` comments.
  [[nodiscard]] std::string to_lp(std::string_view comment = {}) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::string> families_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
};

}  // namespace muqut::ilp
