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

#include "muqut/nn_ilp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace muqut {

using ilp::Sense;
using ilp::Term;
using ilp::VarId;

void validate_problem(const MappingProblem& problem) {
  const auto& verts = problem.subgraph.vertices();
  if (problem.initial.size() != verts.size()) {
    throw std::invalid_argument("initial configuration has " +
                                std::to_string(problem.initial.size()) + " qubits but subgraph has " +
                                std::to_string(verts.size()) + " vertices");
  }
  std::set<Vertex> seen;
  for (Vertex v : problem.initial) {
    if (!problem.subgraph.has_vertex(v)) {
      throw std::invalid_argument("initial configuration uses vertex " + std::to_string(v) +
                                  " outside the subgraph");
    }
    if (!seen.insert(v).second) {
      throw std::invalid_argument("initial configuration places two qubits on vertex " +
                                  std::to_string(v));
    }
  }
  const int n = problem.num_qubits();
  for (const InteractionSet& set : problem.interactions) {
    for (const auto& [p, q] : set.pairs) {
      if (p < 0 || q < 0 || p >= n || q >= n || p == q) {
        throw std::invalid_argument("interaction pair (" + std::to_string(p) + "," +
                                    std::to_string(q) + ") is not a pair of distinct qubits");
      }
    }
  }
}

namespace {

// Injective map of the pair graph into g with every pair on an edge and
// every qubit kept inside the component it starts in.
bool embeds(const std::vector<std::pair<Qubit, Qubit>>& pairs, const TopologyGraph& g,
            const std::vector<Vertex>& initial, const std::map<Vertex, int>& component) {
  std::map<Qubit, std::vector<Qubit>> adj;
  for (const auto& [p, q] : pairs) {
    adj[p].push_back(q);
    adj[q].push_back(p);
  }
  std::vector<Qubit> order;
  for (const auto& [q, nbrs] : adj) order.push_back(q);
  std::stable_sort(order.begin(), order.end(), [&](Qubit a, Qubit b) { return adj[a].size() > adj[b].size(); });
  std::map<Qubit, Vertex> image;
  std::set<Vertex> used;
  auto place = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    const Qubit q = order[i];
    for (Vertex v : g.vertices()) {
      if (used.count(v) || g.degree(v) < adj[q].size()) continue;
      if (component.at(v) != component.at(initial[static_cast<std::size_t>(q)])) continue;
      bool ok = true;
      for (Qubit r : adj[q]) {
        const auto it = image.find(r);
        if (it != image.end() && !g.has_edge(v, it->second)) ok = false;
      }
      if (!ok) continue;
      image[q] = v;
      used.insert(v);
      if (self(self, i + 1)) return true;
      image.erase(q);
      used.erase(v);
    }
    return false;
  };
  return place(place, 0);
}

}  // namespace

std::optional<int> first_unrealizable_level(const MappingProblem& problem) {
  const TopologyGraph& g = problem.subgraph;
  std::map<Vertex, int> component;
  int label = 0;
  for (Vertex root : g.vertices()) {
    if (component.count(root)) continue;
    std::vector<Vertex> stack{root};
    component[root] = label;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        if (component.emplace(w, label).second) stack.push_back(w);
      }
    }
    ++label;
  }
  for (std::size_t i = 0; i < problem.interactions.size(); ++i) {
    if (!embeds(problem.interactions[i].pairs, g, problem.initial, component)) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::size_t>> IlpModel::family_sizes() const {
  return family_sizes_;
}

namespace {

std::string name_of(std::string_view prefix, std::initializer_list<int> idx) {
  std::string s(prefix);
  for (int i : idx) s += '_' + std::to_string(i);
  return s;
}

// z = x AND y
void add_and(ilp::LinearModel& lp, std::uint32_t fam, VarId z, VarId x, VarId y) {
  lp.add_constraint(fam, {{z, 1}, {x, -1}}, Sense::LessEqual, 0);
  lp.add_constraint(fam, {{z, 1}, {y, -1}}, Sense::LessEqual, 0);
  lp.add_constraint(fam, {{z, 1}, {x, -1}, {y, -1}}, Sense::GreaterEqual, -1);
}

// z = OR(xs)
void add_or(ilp::LinearModel& lp, std::uint32_t fam, VarId z, const std::vector<VarId>& xs) {
  std::vector<Term> sum{{z, 1}};
  for (VarId x : xs) {
    lp.add_constraint(fam, {{z, 1}, {x, -1}}, Sense::GreaterEqual, 0);
    sum.push_back({x, -1});
  }
  lp.add_constraint(fam, std::move(sum), Sense::LessEqual, 0);
}

}  // namespace

IlpModel build_model(const MappingProblem& problem) {
  validate_problem(problem);
  if (problem.interactions.empty()) throw std::invalid_argument("window has no levels");
  const int k = problem.last_level();
  const int T = problem.horizon;
  if (T < k) {
    throw std::invalid_argument("horizon " + std::to_string(T) + " cannot hold " +
                                std::to_string(k + 1) + " activations");
  }

  IlpModel model;
  model.problem_ = problem;
  model.levels_ = k + 1;
  model.horizon_ = T;
  model.qubits_ = problem.num_qubits();
  const int n = model.qubits_;
  const TopologyGraph& g = problem.subgraph;
  for (const Edge& e : g.edges()) {
    model.edges_.push_back({static_cast<int>(g.index_of(e.first)), static_cast<int>(g.index_of(e.second))});
  }
  const auto& edges = model.edges_;
  std::vector<std::vector<std::size_t>> incident(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    incident[static_cast<std::size_t>(edges[e].first)].push_back(e);
    incident[static_cast<std::size_t>(edges[e].second)].push_back(e);
  }

  std::set<std::pair<Qubit, Qubit>> pair_set;
  std::set<Qubit> busy_qubits;
  for (const InteractionSet& set : problem.interactions) {
    for (const auto& pr : set.pairs) {
      pair_set.insert(pr);
      busy_qubits.insert(pr.first);
      busy_qubits.insert(pr.second);
    }
  }
  model.pairs_.assign(pair_set.begin(), pair_set.end());

  ilp::LinearModel& lp = model.lp_;
  auto& sizes = model.family_sizes_;
  auto count_family = [&](const std::string& name, std::size_t before) {
    sizes.emplace_back(name, lp.num_vars() - before);
  };

  // Variables.
  std::size_t mark = lp.num_vars();
  for (int i = 0; i <= k; ++i)
    for (int t = 0; t <= T; ++t) model.a_.push_back(lp.add_binary(name_of("a", {i, t})));
  count_family("a", mark);
  mark = lp.num_vars();
  for (int i = 0; i <= k; ++i)
    for (int t = 0; t <= T; ++t) model.m_.push_back(lp.add_binary(name_of("m", {i, t})));
  count_family("m", mark);
  mark = lp.num_vars();
  for (int v = 0; v < n; ++v)
    for (int q = 0; q < n; ++q)
      for (int t = 0; t <= T; ++t) model.x_.push_back(lp.add_binary(name_of("x", {v, q, t})));
  count_family("x", mark);
  mark = lp.num_vars();
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (int t = 0; t < T; ++t)
      model.s_.push_back(lp.add_binary(name_of("s", {edges[e].first, edges[e].second, t})));
  count_family("s", mark);

  const auto fam_once = lp.add_family("once");
  const auto fam_per_cycle = lp.add_family("per_cycle");
  const auto fam_order = lp.add_family("order");
  const auto fam_act_met = lp.add_family("act_met");
  const auto fam_met_keep = lp.add_family("met_keep");
  const auto fam_met_chain = lp.add_family("met_chain");
  const auto fam_met_adj = lp.add_family("met_adj");
  const auto fam_pp = lp.add_family("pp_and");
  const auto fam_n = lp.add_family("n_or");
  const auto fam_eb = lp.add_family("eb_and");
  const auto fam_b = lp.add_family("b_or");
  const auto fam_bv = lp.add_family("bv_and");
  const auto fam_sb = lp.add_family("sb_or");
  const auto fam_block = lp.add_family("swap_block");
  const auto fam_stay = lp.add_family("stay");
  const auto fam_move = lp.add_family("move");
  const auto fam_pos = lp.add_family("pos");
  const auto fam_one_pos = lp.add_family("one_pos");
  const auto fam_one_owner = lp.add_family("one_owner");
  const auto fam_matching = lp.add_family("matching");
  const auto fam_init = lp.add_family("init");

  // Activation structure.
  for (int i = 0; i <= k; ++i) {
    std::vector<Term> once;
    for (int t = 0; t <= T; ++t) once.push_back({model.a(i, t), 1});
    lp.add_constraint(fam_once, std::move(once), Sense::Equal, 1);
  }
  for (int t = 0; t <= T; ++t) {
    std::vector<Term> row;
    for (int i = 0; i <= k; ++i) row.push_back({model.a(i, t), 1});
    lp.add_constraint(fam_per_cycle, std::move(row), Sense::LessEqual, 1);
  }
  for (int i = 0; i < k; ++i) {
    std::vector<Term> row;
    for (int t = 1; t <= T; ++t) row.push_back({model.a(i + 1, t), t});
    for (int t = 1; t <= T; ++t) row.push_back({model.a(i, t), -t});
    lp.add_constraint(fam_order, std::move(row), Sense::GreaterEqual, 1);
  }

  // Met flags (m = 1 means not yet met).
  for (int i = 0; i <= k; ++i) {
    for (int t = 0; t <= T; ++t) {
      lp.add_constraint(fam_act_met, {{model.a(i, t), 1}, {model.m(i, t), 1}}, Sense::LessEqual, 1);
      if (t < T) {
        lp.add_constraint(fam_met_keep, {{model.m(i, t + 1), 1}, {model.m(i, t), -1}},
                          Sense::LessEqual, 0);
      }
      if (i < k) {
        lp.add_constraint(fam_met_chain, {{model.m(i + 1, t), 1}, {model.m(i, t), -1}},
                          Sense::GreaterEqual, 0);
      }
    }
  }

  // Pair adjacency.
  std::map<std::pair<Qubit, Qubit>, std::vector<VarId>> adj_var;  // per pair, per t
  mark = lp.num_vars();
  std::size_t pp_count = 0;
  for (const auto& [p, q] : model.pairs_) {
    auto& per_t = adj_var[{p, q}];
    for (int t = 0; t <= T; ++t) {
      const VarId nv = lp.add_binary(name_of("n", {p, q, t}));
      per_t.push_back(nv);
      std::vector<VarId> terms;
      for (const Edge& e : edges) {
        for (const auto& [v, w] : {e, Edge{e.second, e.first}}) {
          const VarId z = lp.add_binary(name_of("pp", {p, v, q, w, t}));
          ++pp_count;
          add_and(lp, fam_pp, z, model.x(v, p, t), model.x(w, q, t));
          terms.push_back(z);
        }
      }
      add_or(lp, fam_n, nv, terms);
    }
  }
  sizes.emplace_back("n", model.pairs_.size() * static_cast<std::size_t>(T + 1));
  sizes.emplace_back("pp", pp_count);
  (void)mark;

  for (int i = 0; i <= k; ++i) {
    const auto& pairs = problem.interactions[static_cast<std::size_t>(i)].pairs;
    const int L = static_cast<int>(pairs.size());
    if (L == 0) continue;
    for (int t = 0; t <= T; ++t) {
      std::vector<Term> row{{model.m(i, t), L}};
      for (const auto& pr : pairs) row.push_back({adj_var[pr][static_cast<std::size_t>(t)], 1});
      for (int t2 = 0; t2 < t; ++t2) row.push_back({model.m(i, t2), -L});
      lp.add_constraint(fam_met_adj, std::move(row), Sense::GreaterEqual, L - L * t);
    }
  }

  // Swap blocking.
  std::size_t eb_count = 0, b_count = 0, bv_count = 0, sb_count = 0;
  std::vector<std::vector<VarId>> eb(static_cast<std::size_t>(k + 1));
  for (int i = 0; i <= k; ++i) {
    if (problem.interactions[static_cast<std::size_t>(i)].empty()) continue;
    for (int t = 0; t < T; ++t) {
      const VarId z = lp.add_binary(name_of("eb", {i, t}));
      ++eb_count;
      eb[static_cast<std::size_t>(i)].push_back(z);
      // z = (met) AND (not activated by t)
      lp.add_constraint(fam_eb, {{z, 1}, {model.m(i, t), 1}}, Sense::LessEqual, 1);
      std::vector<Term> pending{{z, 1}};
      std::vector<Term> lower{{z, 1}, {model.m(i, t), 1}};
      for (int t2 = 0; t2 <= t; ++t2) {
        pending.push_back({model.a(i, t2), 1});
        lower.push_back({model.a(i, t2), 1});
      }
      lp.add_constraint(fam_eb, std::move(pending), Sense::LessEqual, 1);
      lp.add_constraint(fam_eb, std::move(lower), Sense::GreaterEqual, 1);
    }
  }
  // bv[v][q] for cycle t, only for qubits that appear in some interaction.
  std::map<std::pair<int, int>, std::vector<VarId>> bv;  // (v, q) -> per t
  for (int t = 0; t < T; ++t) {
    for (Qubit q : busy_qubits) {
      std::vector<VarId> sources;
      for (int i = 0; i <= k; ++i) {
        const auto& pairs = problem.interactions[static_cast<std::size_t>(i)].pairs;
        const bool touches = std::any_of(pairs.begin(), pairs.end(), [q](const auto& pr) {
          return pr.first == q || pr.second == q;
        });
        if (!touches) continue;
        sources.push_back(model.a(i, t));
        sources.push_back(eb[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]);
      }
      const VarId bq = lp.add_binary(name_of("b", {q, t}));
      ++b_count;
      add_or(lp, fam_b, bq, sources);
      for (int v = 0; v < n; ++v) {
        const VarId z = lp.add_binary(name_of("bv", {v, q, t}));
        ++bv_count;
        add_and(lp, fam_bv, z, bq, model.x(v, q, t));
        bv[{v, q}].push_back(z);
      }
    }
  }
  if (!busy_qubits.empty()) {
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const auto [v, w] = edges[e];
      for (int t = 0; t < T; ++t) {
        std::vector<VarId> sources;
        for (Qubit q : busy_qubits) {
          sources.push_back(bv[{v, q}][static_cast<std::size_t>(t)]);
          sources.push_back(bv[{w, q}][static_cast<std::size_t>(t)]);
        }
        const VarId z = lp.add_binary(name_of("sb", {v, w, t}));
        ++sb_count;
        add_or(lp, fam_sb, z, sources);
        lp.add_constraint(fam_block, {{model.s(e, t), 1}, {z, 1}}, Sense::LessEqual, 1);
      }
    }
  }
  sizes.emplace_back("eb", eb_count);
  sizes.emplace_back("b", b_count);
  sizes.emplace_back("bv", bv_count);
  sizes.emplace_back("sb", sb_count);

  // Position update.
  std::size_t u_count = 0, c_count = 0, y_count = 0;
  for (int t = 0; t < T; ++t) {
    for (int v = 0; v < n; ++v) {
      const auto& inc = incident[static_cast<std::size_t>(v)];
      for (int q = 0; q < n; ++q) {
        const VarId u = lp.add_binary(name_of("u", {v, q, t + 1}));
        ++u_count;
        lp.add_constraint(fam_stay, {{u, 1}, {model.x(v, q, t), -1}}, Sense::LessEqual, 0);
        std::vector<Term> lower{{u, 1}, {model.x(v, q, t), -1}};
        for (std::size_t e : inc) {
          lp.add_constraint(fam_stay, {{u, 1}, {model.s(e, t), 1}}, Sense::LessEqual, 1);
          lower.push_back({model.s(e, t), 1});
        }
        lp.add_constraint(fam_stay, std::move(lower), Sense::GreaterEqual, 0);

        std::vector<VarId> moves;
        for (std::size_t e : inc) {
          const int w = edges[e].first == v ? edges[e].second : edges[e].first;
          const VarId y = lp.add_binary(name_of("y", {v, w, q, t}));
          ++y_count;
          add_and(lp, fam_move, y, model.s(e, t), model.x(w, q, t));
          moves.push_back(y);
        }
        const VarId c = lp.add_binary(name_of("c", {v, q, t + 1}));
        ++c_count;
        add_or(lp, fam_move, c, moves);

        const VarId xn = model.x(v, q, t + 1);
        lp.add_constraint(fam_pos, {{xn, 1}, {u, -1}}, Sense::GreaterEqual, 0);
        lp.add_constraint(fam_pos, {{xn, 1}, {c, -1}}, Sense::GreaterEqual, 0);
        lp.add_constraint(fam_pos, {{xn, 1}, {u, -1}, {c, -1}}, Sense::LessEqual, 0);
      }
    }
  }
  sizes.emplace_back("u", u_count);
  sizes.emplace_back("c", c_count);
  sizes.emplace_back("y", y_count);

  for (int t = 0; t <= T; ++t) {
    for (int q = 0; q < n; ++q) {
      std::vector<Term> row;
      for (int v = 0; v < n; ++v) row.push_back({model.x(v, q, t), 1});
      lp.add_constraint(fam_one_pos, std::move(row), Sense::Equal, 1);
    }
    for (int v = 0; v < n; ++v) {
      std::vector<Term> row;
      for (int q = 0; q < n; ++q) row.push_back({model.x(v, q, t), 1});
      lp.add_constraint(fam_one_owner, std::move(row), Sense::Equal, 1);
    }
  }
  for (int t = 0; t < T; ++t) {
    for (int v = 0; v < n; ++v) {
      const auto& inc = incident[static_cast<std::size_t>(v)];
      if (inc.size() < 2) continue;
      std::vector<Term> row;
      for (std::size_t e : inc) row.push_back({model.s(e, t), 1});
      lp.add_constraint(fam_matching, std::move(row), Sense::LessEqual, 1);
    }
  }
  for (int q = 0; q < n; ++q) {
    const int v = static_cast<int>(g.index_of(problem.initial[static_cast<std::size_t>(q)]));
    lp.add_constraint(fam_init, {{model.x(v, q, 0), 1}}, Sense::Equal, 1);
  }

  std::vector<Term> objective;
  for (int i = 0; i <= k; ++i)
    for (int t = 0; t <= T; ++t) objective.push_back({model.a(i, t), t});
  lp.set_objective(std::move(objective));
  return model;
}

namespace {

/// Admissible bound from hop distances. Configurations are known exactly up
/// to the first cycle whose SWAP decisions are still open; from there each
/// cycle closes at most two hops of any pair and each SWAP at most one.
class DistanceBound {
 public:
  explicit DistanceBound(const IlpModel& model) : model_(model) {
    dist_ = model.problem().subgraph.distance_matrix();
    const auto& g = model.problem().subgraph;
    for (Vertex v : model.problem().initial) start_.push_back(static_cast<int>(g.index_of(v)));
  }

  ilp::LowerBound operator()(std::span<const std::int8_t> values) const {
    const int T = model_.horizon();
    const auto& edges = model_.local_edges();
    std::vector<int> pos = start_;
    std::vector<int> owner(pos.size());
    for (std::size_t q = 0; q < pos.size(); ++q) owner[static_cast<std::size_t>(pos[q])] = static_cast<int>(q);

    int tk = 0;
    long long swaps_before = 0;
    for (; tk < T; ++tk) {
      bool fixed = true;
      for (std::size_t e = 0; e < edges.size() && fixed; ++e) fixed = values[model_.s(e, tk)] >= 0;
      if (!fixed) break;
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (values[model_.s(e, tk)] != 1) continue;
        ++swaps_before;
        const auto [v, w] = edges[e];
        std::swap(owner[static_cast<std::size_t>(v)], owner[static_cast<std::size_t>(w)]);
        pos[static_cast<std::size_t>(owner[static_cast<std::size_t>(v)])] = v;
        pos[static_cast<std::size_t>(owner[static_cast<std::size_t>(w)])] = w;
      }
    }
    long long swaps_after = 0;
    for (int t = tk; t < T; ++t) {
      for (std::size_t e = 0; e < edges.size(); ++e) swaps_after += values[model_.s(e, t)] == 1;
    }

    ilp::LowerBound lb;
    int prev = -1;
    long long pending_swaps = 0;
    bool first_open = true;
    for (int i = 0; i < model_.levels(); ++i) {
      int fixed_at = -1;
      for (int t = 0; t <= T && fixed_at < 0; ++t) {
        if (values[model_.a(i, t)] == 1) fixed_at = t;
      }
      if (fixed_at >= 0) {
        lb.objective += fixed_at;
        prev = fixed_at;
        continue;
      }
      int d = 0;
      for (const auto& [p, q] : model_.problem().interactions[static_cast<std::size_t>(i)].pairs) {
        const int pd = dist_[static_cast<std::size_t>(pos[static_cast<std::size_t>(p)])]
                            [static_cast<std::size_t>(pos[static_cast<std::size_t>(q)])];
        if (pd < 0) return {0, 0, true};
        d = std::max(d, pd);
      }
      const int need = d / 2;
      int t = prev + 1;
      while (t <= T && (values[model_.a(i, t)] == 0 || (t >= tk && t - tk < need))) ++t;
      if (t > T) return {0, 0, true};
      lb.objective += t;
      prev = t;
      if (first_open) {
        pending_swaps = std::max(0, d - 1);
        first_open = false;
      }
    }
    lb.secondary = swaps_before + std::max(swaps_after, pending_swaps);
    return lb;
  }

 private:
  const IlpModel& model_;
  std::vector<std::vector<int>> dist_;
  std::vector<int> start_;
};

Schedule decode(const IlpModel& model, const std::vector<std::int8_t>& values, long long objective) {
  const auto& g = model.problem().subgraph;
  const auto& verts = g.vertices();
  const int T = model.horizon();
  Schedule sched;
  sched.horizon = T;
  sched.objective = objective;
  for (int i = 0; i < model.levels(); ++i) {
    int act = -1, met = -1;
    for (int t = 0; t <= T; ++t) {
      if (act < 0 && values[model.a(i, t)] == 1) act = t;
      if (met < 0 && values[model.m(i, t)] == 0) met = t;
    }
    sched.activations.push_back(act);
    sched.met.push_back(met);
  }
  for (int t = 0; t < T; ++t) {
    for (std::size_t e = 0; e < model.local_edges().size(); ++e) {
      if (values[model.s(e, t)] != 1) continue;
      const auto [v, w] = model.local_edges()[e];
      sched.swaps.push_back({t, make_edge(verts[static_cast<std::size_t>(v)], verts[static_cast<std::size_t>(w)])});
    }
  }
  std::sort(sched.swaps.begin(), sched.swaps.end());
  for (int t = 0; t <= T; ++t) {
    Configuration conf{t, std::vector<Vertex>(static_cast<std::size_t>(model.qubits()), -1)};
    for (int v = 0; v < model.qubits(); ++v) {
      for (int q = 0; q < model.qubits(); ++q) {
        if (values[model.x(v, q, t)] == 1) conf.assignment[static_cast<std::size_t>(q)] = verts[static_cast<std::size_t>(v)];
      }
    }
    sched.configurations.push_back(std::move(conf));
  }
  return sched;
}

}  // namespace

SolveResult solve(const IlpModel& model, std::chrono::duration<double> time_limit) {
  const int T = model.horizon();
  if (first_unrealizable_level(model.problem())) {
    SolveResult none;
    none.status = SolveStatus::Infeasible;
    none.stats.variables = model.lp().num_vars();
    none.stats.constraints = model.lp().num_constraints();
    none.stats.horizons_tried.push_back(T);
    return none;
  }
  ilp::SearchSpec spec;
  for (int t = 0; t <= T; ++t) {
    for (int i = 0; i < model.levels(); ++i) spec.plan.push_back({model.a(i, t), {1, 0}, 2});
    // An interaction is marked met only in its activation cycle: marking it
    // earlier only adds swap blocking, so this loses no optimum.
    for (int i = 0; i < model.levels(); ++i) spec.plan.push_back({model.m(i, t), {1, 1}, 1});
    if (t < T) {
      for (std::size_t e = 0; e < model.local_edges().size(); ++e) {
        spec.plan.push_back({model.s(e, t), {0, 1}, 2});
      }
    }
  }
  for (int t = 0; t < T; ++t) {
    for (std::size_t e = 0; e < model.local_edges().size(); ++e) {
      spec.secondary.push_back(model.s(e, t));
    }
  }
  // Tie-break vector in (cycle, edge) order: a 1 at the first difference is
  // the lexicographically smaller SWAP list.
  spec.tiebreak = spec.secondary;
  spec.bound = DistanceBound(model);

  const auto deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(time_limit);
  ilp::SearchResult found = ilp::branch_and_bound(model.lp(), spec, deadline);

  SolveResult result;
  result.stats.nodes = found.stats.nodes;
  result.stats.conflicts = found.stats.conflicts;
  result.stats.variables = model.lp().num_vars();
  result.stats.constraints = model.lp().num_constraints();
  result.stats.horizons_tried.push_back(T);
  switch (found.status) {
    case ilp::SearchStatus::Optimal: result.status = SolveStatus::Optimal; break;
    case ilp::SearchStatus::Infeasible: result.status = SolveStatus::Infeasible; break;
    case ilp::SearchStatus::TimedOut: result.status = SolveStatus::TimedOut; break;
  }
  if (found.best) result.schedule = decode(model, *found.best, found.objective);
  return result;
}

int default_initial_horizon(const MappingProblem& problem) {
  const int k = problem.last_level();
  const auto& g = problem.subgraph;
  int missing = 0;
  for (const InteractionSet& set : problem.interactions) {
    for (const auto& [p, q] : set.pairs) {
      if (!g.has_edge(problem.initial[static_cast<std::size_t>(p)],
                      problem.initial[static_cast<std::size_t>(q)])) {
        ++missing;
      }
    }
  }
  return k + 2 * missing;
}

int default_maximum_horizon(const MappingProblem& problem) {
  return problem.last_level() + 3 * problem.num_qubits();
}

SolveResult solve_with_horizon_escalation(const MappingProblem& problem,
                                          const HorizonOptions& horizons,
                                          std::chrono::duration<double> time_limit) {
  validate_problem(problem);
  if (problem.interactions.empty()) throw std::invalid_argument("window has no levels");
  if (horizons.step < 1) throw std::invalid_argument("horizon step must be positive");
  const int k = problem.last_level();
  const int first = std::max(k, horizons.initial.value_or(default_initial_horizon(problem)));
  const int last = std::max(first, horizons.maximum.value_or(default_maximum_horizon(problem)));
  if (horizons.initial && horizons.maximum && *horizons.initial > *horizons.maximum) {
    throw std::invalid_argument("initial horizon exceeds maximum horizon");
  }

  SolveResult total;
  // No horizon helps a level whose pairs cannot all be edges at once.
  if (first_unrealizable_level(problem)) {
    total.status = SolveStatus::Infeasible;
    return total;
  }
  const auto start = std::chrono::steady_clock::now();
  const auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(time_limit);
  for (int T = first; T <= last; T += horizons.step) {
    const auto spent = std::chrono::steady_clock::now() - start;
    if (spent >= budget) {
      total.status = SolveStatus::TimedOut;
      return total;
    }
    MappingProblem at = problem;
    at.horizon = T;
    const IlpModel model = build_model(at);
    SolveResult r = solve(model, budget - spent);
    total.stats.nodes += r.stats.nodes;
    total.stats.conflicts += r.stats.conflicts;
    total.stats.variables = r.stats.variables;
    total.stats.constraints = r.stats.constraints;
    total.stats.horizons_tried.push_back(T);
    if (r.status != SolveStatus::Infeasible) {
      total.status = r.status;
      total.schedule = std::move(r.schedule);
      return total;
    }
  }
  total.status = SolveStatus::Infeasible;
  return total;
}

WindowCircuit schedule_to_circuit(const Schedule& schedule, const QuantumCircuit& window,
                                  int num_physical) {
  const QuantumCircuit lev = window.is_levelized() ? window : levelize(window);
  const auto& levels = lev.levels();
  if (levels.size() != schedule.activations.size()) {
    throw std::invalid_argument("schedule activates " + std::to_string(schedule.activations.size()) +
                                " levels but the window has " + std::to_string(levels.size()));
  }
  if (schedule.configurations.size() != static_cast<std::size_t>(schedule.horizon + 1)) {
    throw std::invalid_argument("schedule lacks a configuration per cycle");
  }
  std::vector<std::size_t> level_at(static_cast<std::size_t>(schedule.horizon + 1), SIZE_MAX);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const int t = schedule.activations[i];
    if (t < 0 || t > schedule.horizon || level_at[static_cast<std::size_t>(t)] != SIZE_MAX) {
      throw std::invalid_argument("schedule has an invalid activation for level " + std::to_string(i));
    }
    level_at[static_cast<std::size_t>(t)] = i;
  }

  WindowCircuit out{QuantumCircuit(num_physical), schedule.configurations.back()};
  std::size_t next_swap = 0;
  for (int t = 0; t <= schedule.horizon; ++t) {
    const auto& conf = schedule.configurations[static_cast<std::size_t>(t)].assignment;
    if (const std::size_t i = level_at[static_cast<std::size_t>(t)]; i != SIZE_MAX) {
      for (std::size_t gi : levels[i].gates) {
        Gate gate = lev.gates()[gi];
        gate.level.reset();
        for (Qubit& q : gate.operands) {
          if (q < 0 || static_cast<std::size_t>(q) >= conf.size()) {
            throw std::invalid_argument("window gate operand outside the configuration");
          }
          q = conf[static_cast<std::size_t>(q)];
        }
        out.circuit.add(std::move(gate));
      }
    }
    for (; next_swap < schedule.swaps.size() && schedule.swaps[next_swap].cycle == t; ++next_swap) {
      const Edge& e = schedule.swaps[next_swap].edge;
      out.circuit.add(Gate::swap(e.first, e.second, true));
    }
  }
  if (next_swap != schedule.swaps.size()) {
    throw std::invalid_argument("schedule has SWAPs outside its horizon");
  }
  return out;
}

std::string export_lp(const IlpModel& model) {
  const auto& problem = model.problem();
  std::string comment = "nearest-neighbour mapping model\n";
  comment += "levels " + std::to_string(model.levels()) + ", horizon " +
             std::to_string(model.horizon()) + ", qubits " + std::to_string(model.qubits()) + "\n";
  comment += "local vertex -> device vertex:";
  const auto& verts = problem.subgraph.vertices();
  for (std::size_t v = 0; v < verts.size(); ++v) {
    comment += ' ' + std::to_string(v) + "->" + std::to_string(verts[v]);
  }
  comment += '\n';
  return model.lp().to_lp(comment);
}

}  // namespace muqut
