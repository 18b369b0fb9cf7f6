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

#include "muqut/bb_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace muqut::ilp {
namespace {

/// Activity-based bound propagation over rows normalized to `sum <= rhs`.
class Propagator {
 public:
  explicit Propagator(const LinearModel& model) {
    std::vector<std::vector<std::pair<std::uint32_t, int>>> cols(model.num_vars());
    auto add_row = [&](const std::vector<Term>& terms, int sign, int rhs) {
      const auto r = static_cast<std::uint32_t>(rhs_.size());
      row_start_.push_back(static_cast<std::uint32_t>(row_var_.size()));
      long long min_act = 0;
      int max_abs = 0;
      for (const Term& t : terms) {
        const int c = sign * t.coef;
        if (c == 0) continue;
        row_var_.push_back(t.var);
        row_coef_.push_back(c);
        cols[t.var].emplace_back(r, c);
        if (c < 0) min_act += c;
        max_abs = std::max(max_abs, std::abs(c));
      }
      rhs_.push_back(static_cast<long long>(sign) * rhs);
      min_act_.push_back(min_act);
      max_abs_.push_back(max_abs);
    };
    for (const Constraint& c : model.constraints()) {
      if (c.sense != Sense::GreaterEqual) add_row(c.terms, 1, c.rhs);
      if (c.sense != Sense::LessEqual) add_row(c.terms, -1, c.rhs);
    }
    row_start_.push_back(static_cast<std::uint32_t>(row_var_.size()));

    col_start_.push_back(0);
    for (const auto& col : cols) {
      for (const auto& [r, c] : col) {
        col_row_.push_back(r);
        col_coef_.push_back(c);
      }
      col_start_.push_back(static_cast<std::uint32_t>(col_row_.size()));
    }
    value_.assign(model.num_vars(), -1);
  }

  [[nodiscard]] std::span<const std::int8_t> values() const { return value_; }
  [[nodiscard]] std::int8_t value(VarId v) const { return value_[v]; }
  [[nodiscard]] std::size_t trail_size() const { return trail_.size(); }
  [[nodiscard]] std::uint64_t fixings() const { return fixings_; }

  /// Checks every row once; needed for rows that are tight before any fixing.
  bool initial_propagate() {
    for (std::uint32_t r = 0; r + 1 < row_start_.size(); ++r) {
      if (!scan_row(r)) return false;
    }
    return propagate();
  }

  /// Fixes `var` and propagates to fixpoint. False on conflict; the caller
  /// must undo() back to its mark either way.
  bool assign(VarId var, std::int8_t val) {
    if (value_[var] >= 0) return value_[var] == val;
    set(var, val);
    return propagate();
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const std::size_t idx = trail_.size() - 1;
      const VarId var = trail_[idx];
      if (idx < qhead_) {
        const std::int8_t val = value_[var];
        for (std::uint32_t k = col_start_[var]; k < col_start_[var + 1]; ++k) {
          const int c = col_coef_[k];
          min_act_[col_row_[k]] -= static_cast<long long>(c) * val - std::min(c, 0);
        }
      }
      value_[var] = -1;
      trail_.pop_back();
    }
    qhead_ = std::min(qhead_, mark);
  }

 private:
  void set(VarId var, std::int8_t val) {
    value_[var] = val;
    trail_.push_back(var);
    ++fixings_;
  }

  bool scan_row(std::uint32_t r) {
    const long long slack = rhs_[r] - min_act_[r];
    if (slack < 0) return false;
    if (max_abs_[r] <= slack) return true;
    for (std::uint32_t k = row_start_[r]; k < row_start_[r + 1]; ++k) {
      const VarId v = row_var_[k];
      if (value_[v] >= 0) continue;
      const int c = row_coef_[k];
      if (std::abs(c) > slack) set(v, c > 0 ? 0 : 1);
    }
    return true;
  }

  bool propagate() {
    while (qhead_ < trail_.size()) {
      const VarId var = trail_[qhead_++];
      const std::int8_t val = value_[var];
      const std::uint32_t begin = col_start_[var];
      const std::uint32_t end = col_start_[var + 1];
      for (std::uint32_t k = begin; k < end; ++k) {
        const int c = col_coef_[k];
        min_act_[col_row_[k]] += static_cast<long long>(c) * val - std::min(c, 0);
      }
      for (std::uint32_t k = begin; k < end; ++k) {
        if (!scan_row(col_row_[k])) return false;
      }
    }
    return true;
  }

  std::vector<std::uint32_t> row_start_;
  std::vector<VarId> row_var_;
  std::vector<int> row_coef_;
  std::vector<long long> rhs_;
  std::vector<long long> min_act_;
  std::vector<int> max_abs_;
  std::vector<std::uint32_t> col_start_;
  std::vector<std::uint32_t> col_row_;
  std::vector<int> col_coef_;

  std::vector<std::int8_t> value_;
  std::vector<VarId> trail_;
  std::size_t qhead_ = 0;
  std::uint64_t fixings_ = 0;
};

class Search {
 public:
  Search(const LinearModel& model, const SearchSpec& spec, Deadline deadline)
      : model_(model), spec_(spec), deadline_(deadline), prop_(model) {}

  SearchResult run() {
    SearchResult result;
    if (prop_.initial_propagate()) {
      dfs(0);
    }
    result.stats = stats_;
    result.stats.fixings = prop_.fixings();
    if (best_) {
      result.best = std::move(best_);
      result.objective = best_objective_;
      result.secondary = best_secondary_;
      result.status = timed_out_ ? SearchStatus::TimedOut : SearchStatus::Optimal;
    } else {
      result.status = timed_out_ ? SearchStatus::TimedOut : SearchStatus::Infeasible;
    }
    return result;
  }

 private:
  LowerBound lower_bound() const {
    const auto values = prop_.values();
    long long objective = 0;
    for (const Term& t : model_.objective()) {
      const std::int8_t v = values[t.var];
      if (v >= 0) {
        objective += static_cast<long long>(t.coef) * v;
      } else if (t.coef < 0) {
        objective += t.coef;
      }
    }
    long long secondary = 0;
    for (VarId v : spec_.secondary) secondary += values[v] == 1 ? 1 : 0;
    LowerBound lb{objective, secondary, false};
    if (spec_.bound) {
      const LowerBound user = spec_.bound(values);
      if (user.infeasible) return user;
      lb.objective = std::max(lb.objective, user.objective);
      lb.secondary = std::max(lb.secondary, user.secondary);
    }
    return lb;
  }

  bool dominated(const LowerBound& lb) const {
    if (!best_) return false;
    if (lb.objective != best_objective_) return lb.objective > best_objective_;
    return lb.secondary > best_secondary_;
  }

  void record_leaf() {
    const auto values = prop_.values();
    const long long objective = model_.evaluate(values);
    long long secondary = 0;
    for (VarId v : spec_.secondary) secondary += values[v];
    bool better = !best_ || objective < best_objective_ ||
                  (objective == best_objective_ && secondary < best_secondary_);
    if (!better && objective == best_objective_ && secondary == best_secondary_) {
      for (VarId v : spec_.tiebreak) {
        if (values[v] != (*best_)[v]) {
          better = values[v] == 1;
          break;
        }
      }
    }
    if (better) {
      best_.emplace(values.begin(), values.end());
      best_objective_ = objective;
      best_secondary_ = secondary;
    }
  }

  void dfs(std::size_t pos) {
    if (timed_out_) return;
    ++stats_.nodes;
    if ((stats_.nodes & 1023u) == 1 && std::chrono::steady_clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    const LowerBound lb = lower_bound();
    if (lb.infeasible || dominated(lb)) {
      ++stats_.pruned;
      return;
    }
    while (pos < spec_.plan.size() && prop_.value(spec_.plan[pos].var) >= 0) ++pos;

    BranchItem item;
    if (pos < spec_.plan.size()) {
      item = spec_.plan[pos];
    } else {
      const auto values = prop_.values();
      const auto it = std::find(values.begin(), values.end(), std::int8_t{-1});
      if (it == values.end()) {
        record_leaf();
        return;
      }
      item.var = static_cast<VarId>(it - values.begin());
    }

    for (std::uint8_t i = 0; i < item.count && !timed_out_; ++i) {
      const std::size_t mark = prop_.trail_size();
      if (prop_.assign(item.var, item.values[i])) {
        dfs(pos + 1);
      } else {
        ++stats_.conflicts;
      }
      prop_.undo(mark);
    }
  }

  const LinearModel& model_;
  const SearchSpec& spec_;
  Deadline deadline_;
  Propagator prop_;
  SearchStats stats_;
  bool timed_out_ = false;
  std::optional<std::vector<std::int8_t>> best_;
  long long best_objective_ = std::numeric_limits<long long>::max();
  long long best_secondary_ = std::numeric_limits<long long>::max();
};

}  // namespace

SearchResult branch_and_bound(const LinearModel& model, const SearchSpec& spec, Deadline deadline) {
  Search search(model, spec, deadline);
  return search.run();
}

}  // namespace muqut::ilp
