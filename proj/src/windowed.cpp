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

#include "muqut/windowed.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "muqut/error.hpp"

namespace muqut {

WindowPlan split_windows(const QuantumCircuit& circuit, int w) {
  if (w < 1) throw std::invalid_argument("window size must be at least 1");
  WindowPlan plan;
  plan.window_size = w;
  const int k = circuit.depth();
  for (int first = 1; first <= k; first += w) {
    plan.windows.emplace_back(first, std::min(k, first + w - 1));
  }
  return plan;
}

QuantumCircuit window_circuit(const QuantumCircuit& circuit, std::pair<int, int> levels) {
  const QuantumCircuit lev = circuit.is_levelized() ? circuit : levelize(circuit);
  QuantumCircuit out(lev.num_qubits());
  for (const Gate& gate : lev.gates()) {
    if (*gate.level < levels.first || *gate.level > levels.second) continue;
    Gate copy = gate;
    copy.level.reset();
    out.add(std::move(copy));
  }
  return levelize(out);
}

MappingResult map_windowed(const QuantumCircuit& circuit, const TopologyGraph& subgraph,
                           const std::vector<Vertex>& initial, int window_size,
                           const SolverOptions& options, const NativeGateSet& gates) {
  if (subgraph.size() != static_cast<std::size_t>(circuit.num_qubits())) {
    throw std::invalid_argument("subgraph has " + std::to_string(subgraph.size()) +
                                " vertices but the circuit has " +
                                std::to_string(circuit.num_qubits()) + " qubits");
  }
  const QuantumCircuit lev = levelize(circuit);
  const WindowPlan plan = split_windows(lev, window_size);
  const auto all_sets = interactions(lev);

  int num_physical = 0;
  for (Vertex v : subgraph.vertices()) num_physical = std::max(num_physical, v + 1);

  MappingResult result;
  result.subgraph = subgraph;
  result.initial = Configuration{0, initial};
  result.circuit = QuantumCircuit(num_physical);
  result.circuit.set_layout(initial);

  std::vector<Vertex> current = initial;
  for (std::size_t wi = 0; wi < plan.windows.size(); ++wi) {
    const auto range = plan.windows[wi];
    MappingProblem problem;
    problem.subgraph = subgraph;
    problem.initial = current;
    problem.interactions.assign(all_sets.begin() + (range.first - 1), all_sets.begin() + range.second);
    // Each window's schedule cycles are local, so the problem's levels are
    // re-indexed from zero here.
    SolveResult solved = solve_with_horizon_escalation(problem, options.horizons, options.time_limit);
    if (!solved.schedule) {
      const bool timeout = solved.status == SolveStatus::TimedOut;
      throw MappingError(timeout ? MappingError::Kind::TimedOut : MappingError::Kind::Infeasible, wi,
                         std::string(timeout ? "timed out" : "infeasible") + " in window " +
                             std::to_string(wi) + " (levels " + std::to_string(range.first) + ".." +
                             std::to_string(range.second) + ")");
    }
    WindowResult wr;
    wr.levels = range;
    wr.schedule = std::move(*solved.schedule);
    wr.stats = std::move(solved.stats);
    wr.timed_out = solved.status == SolveStatus::TimedOut;
    result.timed_out = result.timed_out || wr.timed_out;

    const WindowCircuit piece = schedule_to_circuit(wr.schedule, window_circuit(lev, range), num_physical);
    for (const Gate& g : piece.circuit.gates()) result.circuit.add(g);
    current = piece.final_configuration.assignment;
    result.swaps += static_cast<int>(wr.schedule.swaps.size());
    result.depth += wr.schedule.depth();
    result.windows.push_back(std::move(wr));
  }
  result.final_configuration = Configuration{result.depth, current};
  result.counts = count_gates(result.circuit, gates);
  return result;
}

bool verify_nn_compliance(const QuantumCircuit& mapped, const TopologyGraph& subgraph) {
  return std::all_of(mapped.gates().begin(), mapped.gates().end(), [&](const Gate& g) {
    return !g.is_two_qubit() || subgraph.has_edge(g.operands[0], g.operands[1]);
  });
}

bool verify_nn_compliance(const MappingResult& result, const TopologyGraph& subgraph) {
  return verify_nn_compliance(result.circuit, subgraph);
}

EquivalenceReport check_equivalence(const QuantumCircuit& original, const QuantumCircuit& mapped) {
  EquivalenceReport report;
  const int n = original.num_qubits();
  std::vector<Vertex> layout;
  if (mapped.layout()) {
    layout = *mapped.layout();
  } else {
    for (int q = 0; q < n; ++q) layout.push_back(q);
  }
  if (static_cast<int>(layout.size()) != n) {
    report.reason = "layout covers " + std::to_string(layout.size()) + " qubits, original has " +
                    std::to_string(n);
    return report;
  }
  std::map<Vertex, Qubit> holder;
  for (int q = 0; q < n; ++q) {
    if (!holder.emplace(layout[static_cast<std::size_t>(q)], q).second) {
      report.reason = "layout is not injective";
      return report;
    }
  }

  std::vector<std::deque<std::size_t>> pending(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < original.size(); ++g) {
    for (Qubit q : original.gates()[g].operands) pending[static_cast<std::size_t>(q)].push_back(g);
  }

  for (std::size_t mi = 0; mi < mapped.size(); ++mi) {
    const Gate& gate = mapped.gates()[mi];
    const std::string where = "mapped gate " + std::to_string(mi);
    if (gate.is_swap() && gate.routing) {
      const Vertex a = gate.operands[0];
      const Vertex b = gate.operands[1];
      const auto ia = holder.find(a);
      const auto ib = holder.find(b);
      std::optional<Qubit> qa, qb;
      if (ia != holder.end()) qa = ia->second;
      if (ib != holder.end()) qb = ib->second;
      holder.erase(a);
      holder.erase(b);
      if (qa) holder[b] = *qa;
      if (qb) holder[a] = *qb;
      continue;
    }
    std::vector<Qubit> logical;
    for (Vertex v : gate.operands) {
      const auto it = holder.find(v);
      if (it == holder.end()) {
        report.reason = where + " acts on vertex " + std::to_string(v) + " holding no qubit";
        return report;
      }
      logical.push_back(it->second);
    }
    auto& front_queue = pending[static_cast<std::size_t>(logical[0])];
    if (front_queue.empty()) {
      report.reason = where + " has no pending original gate";
      return report;
    }
    const std::size_t og = front_queue.front();
    Gate expected = original.gates()[og];
    Gate actual = gate;
    actual.operands = logical;
    if (!(expected == actual)) {
      report.reason = where + " does not match original gate " + std::to_string(og);
      return report;
    }
    for (Qubit q : logical) {
      auto& queue = pending[static_cast<std::size_t>(q)];
      if (queue.empty() || queue.front() != og) {
        report.reason = where + " runs original gate " + std::to_string(og) + " out of order";
        return report;
      }
      queue.pop_front();
    }
  }
  for (int q = 0; q < n; ++q) {
    if (!pending[static_cast<std::size_t>(q)].empty()) {
      report.reason = "original gate " + std::to_string(pending[static_cast<std::size_t>(q)].front()) +
                      " never executed";
      return report;
    }
  }
  report.final_layout.assign(static_cast<std::size_t>(n), -1);
  for (const auto& [v, q] : holder) report.final_layout[static_cast<std::size_t>(q)] = v;
  report.equivalent = true;
  return report;
}

bool verify_equivalence(const QuantumCircuit& original, const QuantumCircuit& mapped) {
  return check_equivalence(original, mapped).equivalent;
}

bool verify_equivalence(const QuantumCircuit& original, const MappingResult& result) {
  return verify_equivalence(original, result.circuit);
}

}  // namespace muqut
