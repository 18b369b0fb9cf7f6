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

// Semantic schedule validation. Deliberately shares no code with the model
// builder: it replays SWAPs on plain vectors and checks adjacency directly on
// the topology graph.

#include <algorithm>
#include <map>
#include <set>

#include "muqut/nn_ilp.hpp"

namespace muqut {
namespace {

std::string at(int t) { return " at cycle " + std::to_string(t); }

}  // namespace

std::vector<std::string> check_schedule(const MappingProblem& problem, const Schedule& schedule) {
  std::vector<std::string> errors;
  const TopologyGraph& g = problem.subgraph;
  const int levels = static_cast<int>(problem.interactions.size());
  const int T = schedule.horizon;
  const std::size_t n = problem.initial.size();

  if (T < 0) return {"negative horizon"};
  if (static_cast<int>(schedule.activations.size()) != levels) {
    errors.push_back("expected " + std::to_string(levels) + " activations, got " +
                     std::to_string(schedule.activations.size()));
    return errors;
  }
  long long objective = 0;
  for (int i = 0; i < levels; ++i) {
    const int a = schedule.activations[static_cast<std::size_t>(i)];
    if (a < 0 || a > T) errors.push_back("level " + std::to_string(i) + " activated outside [0, T]");
    if (i > 0 && a <= schedule.activations[static_cast<std::size_t>(i - 1)]) {
      errors.push_back("level " + std::to_string(i) + " not activated after level " + std::to_string(i - 1));
    }
    objective += a;
  }
  if (objective != schedule.objective) {
    errors.push_back("objective " + std::to_string(schedule.objective) + " but activations sum to " +
                     std::to_string(objective));
  }
  if (!errors.empty()) return errors;

  // Replay.
  std::map<int, std::vector<Edge>> swaps_at;
  for (std::size_t s = 0; s < schedule.swaps.size(); ++s) {
    const SwapEvent& ev = schedule.swaps[s];
    if (ev.cycle < 0 || ev.cycle >= T) errors.push_back("swap outside [0, T)" + at(ev.cycle));
    if (!g.has_edge(ev.edge.first, ev.edge.second)) {
      errors.push_back("swap on non-edge (" + std::to_string(ev.edge.first) + "," +
                       std::to_string(ev.edge.second) + ")" + at(ev.cycle));
    }
    swaps_at[ev.cycle].push_back(ev.edge);
  }
  for (const auto& [t, list] : swaps_at) {
    std::set<Vertex> used;
    for (const Edge& e : list) {
      if (!used.insert(e.first).second || !used.insert(e.second).second) {
        errors.push_back("vertex in two swaps" + at(t));
      }
    }
  }
  if (!errors.empty()) return errors;

  if (schedule.configurations.size() != static_cast<std::size_t>(T + 1)) {
    errors.push_back("expected " + std::to_string(T + 1) + " configurations");
    return errors;
  }
  std::vector<Vertex> pos = problem.initial;
  for (int t = 0; t <= T; ++t) {
    const Configuration& conf = schedule.configurations[static_cast<std::size_t>(t)];
    if (conf.cycle != t) errors.push_back("configuration labelled " + std::to_string(conf.cycle) + at(t));
    if (conf.assignment != pos) {
      errors.push_back(t == 0 ? std::string("initial configuration differs from C")
                              : "configuration does not follow from swaps" + at(t));
    }
    std::set<Vertex> image(conf.assignment.begin(), conf.assignment.end());
    if (image.size() != n || !std::all_of(image.begin(), image.end(),
                                          [&](Vertex v) { return g.has_vertex(v); })) {
      errors.push_back("configuration not a bijection onto the subgraph" + at(t));
    }
    if (auto it = swaps_at.find(t); it != swaps_at.end()) {
      for (const Edge& e : it->second) {
        for (Vertex& v : pos) {
          if (v == e.first) {
            v = e.second;
          } else if (v == e.second) {
            v = e.first;
          }
        }
      }
    }
  }
  if (!errors.empty()) return errors;

  auto conf_at = [&](int t) -> const std::vector<Vertex>& {
    return schedule.configurations[static_cast<std::size_t>(t)].assignment;
  };
  auto adjacent = [&](int i, int t) {
    for (const auto& [p, q] : problem.interactions[static_cast<std::size_t>(i)].pairs) {
      if (!g.has_edge(conf_at(t)[static_cast<std::size_t>(p)], conf_at(t)[static_cast<std::size_t>(q)])) {
        return false;
      }
    }
    return true;
  };

  const bool have_met = !schedule.met.empty();
  if (have_met && schedule.met.size() != static_cast<std::size_t>(levels)) {
    errors.push_back("met list has wrong length");
    return errors;
  }
  for (int i = 0; i < levels; ++i) {
    const int a = schedule.activations[static_cast<std::size_t>(i)];
    if (!adjacent(i, a)) errors.push_back("level " + std::to_string(i) + " not nearest-neighbour" + at(a));
    const int met = have_met ? schedule.met[static_cast<std::size_t>(i)] : a;
    if (met < 0 || met > a) {
      errors.push_back("level " + std::to_string(i) + " activated before it is met");
      continue;
    }
    if (!adjacent(i, met)) errors.push_back("interaction " + std::to_string(i) + " marked met" + at(met));
    if (have_met && i > 0 && met < schedule.met[static_cast<std::size_t>(i - 1)]) {
      errors.push_back("interaction " + std::to_string(i) + " met before interaction " +
                       std::to_string(i - 1));
    }
    // Frozen qubits: from the met cycle through the activation cycle.
    std::set<Qubit> frozen;
    for (const auto& [p, q] : problem.interactions[static_cast<std::size_t>(i)].pairs) {
      frozen.insert(p);
      frozen.insert(q);
    }
    for (int t = met; t <= a && t < T; ++t) {
      auto it = swaps_at.find(t);
      if (it == swaps_at.end()) continue;
      for (const Edge& e : it->second) {
        for (Qubit q : frozen) {
          const Vertex v = conf_at(t)[static_cast<std::size_t>(q)];
          if (v == e.first || v == e.second) {
            errors.push_back("swap moves qubit " + std::to_string(q) + " of level " +
                             std::to_string(i) + at(t));
          }
        }
      }
    }
  }
  return errors;
}

}  // namespace muqut
