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

#include "muqut/fidelity.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace muqut {

double success_rate(const QuantumCircuit& circuit, const CalibrationData& calibration,
                    const NativeGateSet& gates) {
  const bool has_swap = std::any_of(circuit.gates().begin(), circuit.gates().end(),
                                    [](const Gate& g) { return g.is_swap(); });
  const QuantumCircuit native = has_swap ? decompose_swaps(circuit, gates) : circuit;
  double rate = 1.0;
  for (const Gate& gate : native.gates()) {
    if (!gates.is_noisy(gate)) continue;
    double eta = 0.0;
    if (gate.is_two_qubit()) {
      const auto it = calibration.edge_error.find(make_edge(gate.operands[0], gate.operands[1]));
      if (it == calibration.edge_error.end()) {
        throw std::invalid_argument("no two-qubit error for edge (" + std::to_string(gate.operands[0]) +
                                    "," + std::to_string(gate.operands[1]) + ")");
      }
      eta = it->second;
    } else {
      const auto it = calibration.vertices.find(gate.operands[0]);
      if (it == calibration.vertices.end() || !it->second.gate_error) {
        throw std::invalid_argument("no gate error for qubit " + std::to_string(gate.operands[0]));
      }
      eta = *it->second.gate_error;
    }
    rate *= 1.0 - eta;
  }
  return rate;
}

TopologyGraph footprint(const QuantumCircuit& mapped, const TopologyGraph& subgraph) {
  TopologyGraph fp;
  for (Vertex v : subgraph.vertices()) {
    fp.add_vertex(v);
    if (auto it = subgraph.coords().find(v); it != subgraph.coords().end()) fp.set_coord(v, it->second);
  }
  std::set<Edge> used;
  for (const Gate& g : mapped.gates()) {
    if (!g.is_two_qubit()) continue;
    const Edge e = make_edge(g.operands[0], g.operands[1]);
    if (!subgraph.has_edge(e.first, e.second)) {
      throw std::invalid_argument("gate on (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                                  ") is not an edge of the subgraph");
    }
    used.insert(e);
  }
  for (const Edge& e : used) fp.add_edge(e.first, e.second);
  return fp;
}

namespace {

struct Box {
  GridCoord lo{std::numeric_limits<int>::max(), std::numeric_limits<int>::max()};
  GridCoord hi{std::numeric_limits<int>::min(), std::numeric_limits<int>::min()};

  void add(GridCoord c) {
    lo.row = std::min(lo.row, c.row);
    lo.col = std::min(lo.col, c.col);
    hi.row = std::max(hi.row, c.row);
    hi.col = std::max(hi.col, c.col);
  }
  [[nodiscard]] int width() const { return hi.col - lo.col + 1; }
  [[nodiscard]] int height() const { return hi.row - lo.row + 1; }
};

Box bounding_box(const TopologyGraph& g) {
  Box box;
  for (const auto& [v, c] : g.coords()) box.add(c);
  return box;
}

}  // namespace

std::optional<HGrid> extract_hgrid(const TopologyGraph& footprint, const TopologyGraph& device) {
  if (!footprint.has_grid() || !device.has_grid()) return std::nullopt;
  const Box fb = bounding_box(footprint);
  const Box db = bounding_box(device);
  HGrid h{fb.width(), fb.height(), db.width(), db.height(), fb.lo, db.lo};
  if (h.hqh > h.qh || h.hqv > h.qv) {
    throw std::invalid_argument("footprint (" + std::to_string(h.hqv) + "x" + std::to_string(h.hqh) +
                                ") does not fit the device grid (" + std::to_string(h.qv) + "x" +
                                std::to_string(h.qh) + ")");
  }
  return h;
}

PlacementEnumeration enumerate_placements(const HGrid& hgrid, const TopologyGraph& footprint,
                                          const TopologyGraph& device) {
  std::map<GridCoord, Vertex> at;
  for (const auto& [v, c] : device.coords()) at.emplace(c, v);

  PlacementEnumeration out;
  std::set<std::vector<std::pair<Vertex, Vertex>>> seen;
  for (int r0 = 0; r0 + hgrid.hqv <= hgrid.qv; ++r0) {
    for (int c0 = 0; c0 + hgrid.hqh <= hgrid.qh; ++c0) {
      ++out.offsets;
      for (int mirror = 0; mirror < 4; ++mirror) {
        ++out.generated;
        const GridOrigin origin{r0, c0, (mirror & 1) != 0, (mirror & 2) != 0};
        PlacementCandidate cand;
        cand.origin = origin;
        bool ok = true;
        for (Vertex v : footprint.vertices()) {
          const GridCoord c = footprint.coords().at(v);
          int dr = c.row - hgrid.origin.row;
          int dc = c.col - hgrid.origin.col;
          if (origin.mirror_v) dr = hgrid.hqv - 1 - dr;
          if (origin.mirror_h) dc = hgrid.hqh - 1 - dc;
          const auto it = at.find({hgrid.device_origin.row + r0 + dr, hgrid.device_origin.col + c0 + dc});
          if (it == at.end()) {
            ok = false;
            break;
          }
          cand.assignment.emplace_back(v, it->second);
        }
        if (!ok) continue;
        std::map<Vertex, Vertex> f(cand.assignment.begin(), cand.assignment.end());
        for (const Edge& e : footprint.edges()) {
          if (!device.has_edge(f[e.first], f[e.second])) {
            ok = false;
            break;
          }
        }
        if (!ok || !seen.insert(cand.assignment).second) continue;
        out.candidates.push_back(std::move(cand));
      }
    }
  }
  return out;
}

namespace {

class Embedder {
 public:
  Embedder(const TopologyGraph& pattern, const TopologyGraph& target, std::size_t limit)
      : p_(pattern), t_(target), limit_(limit) {
    // Order pattern vertices so that each one after the first of its
    // component has an earlier neighbour.
    std::set<Vertex> placed;
    std::vector<Vertex> rest = p_.vertices();
    std::stable_sort(rest.begin(), rest.end(),
                     [&](Vertex a, Vertex b) { return p_.degree(a) > p_.degree(b); });
    for (Vertex root : rest) {
      if (placed.count(root)) continue;
      std::vector<Vertex> queue{root};
      placed.insert(root);
      for (std::size_t i = 0; i < queue.size(); ++i) {
        order_.push_back(queue[i]);
        for (Vertex w : p_.neighbors(queue[i])) {
          if (placed.insert(w).second) queue.push_back(w);
        }
      }
    }
    for (Vertex v : order_) {
      std::optional<Vertex> anchor;
      for (Vertex w : p_.neighbors(v)) {
        if (position(w) < position(v)) {
          anchor = w;
          break;
        }
      }
      anchor_.push_back(anchor);
    }
  }

  std::vector<PlacementCandidate> run() {
    if (p_.size() > t_.size()) return {};
    extend(0);
    std::sort(found_.begin(), found_.end(),
              [](const auto& a, const auto& b) { return a.assignment < b.assignment; });
    return std::move(found_);
  }

 private:
  [[nodiscard]] std::size_t position(Vertex v) const {
    return static_cast<std::size_t>(std::find(order_.begin(), order_.end(), v) - order_.begin());
  }

  void extend(std::size_t depth) {
    if (found_.size() >= limit_) return;
    if (depth == order_.size()) {
      PlacementCandidate cand;
      for (std::size_t i = 0; i < order_.size(); ++i) cand.assignment.emplace_back(order_[i], image_[i]);
      std::sort(cand.assignment.begin(), cand.assignment.end());
      found_.push_back(std::move(cand));
      return;
    }
    const Vertex v = order_[depth];
    const std::vector<Vertex>& pool =
        anchor_[depth] ? t_.neighbors(image_[position(*anchor_[depth])]) : t_.vertices();
    for (Vertex cand : pool) {
      if (used_.count(cand) || t_.degree(cand) < p_.degree(v)) continue;
      bool ok = true;
      for (Vertex w : p_.neighbors(v)) {
        const std::size_t pw = position(w);
        if (pw < depth && !t_.has_edge(cand, image_[pw])) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used_.insert(cand);
      image_.push_back(cand);
      extend(depth + 1);
      image_.pop_back();
      used_.erase(cand);
      if (found_.size() >= limit_) return;
    }
  }

  const TopologyGraph& p_;
  const TopologyGraph& t_;
  std::size_t limit_;
  std::vector<Vertex> order_;
  std::vector<std::optional<Vertex>> anchor_;
  std::vector<Vertex> image_;
  std::set<Vertex> used_;
  std::vector<PlacementCandidate> found_;
};

}  // namespace

std::vector<PlacementCandidate> enumerate_embeddings(const TopologyGraph& footprint,
                                                     const TopologyGraph& device, std::size_t limit) {
  if (footprint.size() > kMaxIsomorphismVertices) {
    throw std::invalid_argument("footprint has more than " + std::to_string(kMaxIsomorphismVertices) +
                                " vertices");
  }
  return Embedder(footprint, device, limit).run();
}

PlacementCandidate identity_placement(const TopologyGraph& footprint) {
  PlacementCandidate cand;
  for (Vertex v : footprint.vertices()) cand.assignment.emplace_back(v, v);
  return cand;
}

QuantumCircuit relabel(const QuantumCircuit& circuit,
                       const std::vector<std::pair<Vertex, Vertex>>& assignment) {
  const std::map<Vertex, Vertex> f(assignment.begin(), assignment.end());
  auto map_one = [&](Vertex v) {
    const auto it = f.find(v);
    if (it == f.end()) throw std::invalid_argument("vertex " + std::to_string(v) + " is not placed");
    return it->second;
  };
  int width = 0;
  for (const auto& [from, to] : assignment) width = std::max(width, to + 1);
  QuantumCircuit out(width);
  for (Gate g : circuit.gates()) {
    for (Qubit& q : g.operands) q = map_one(q);
    g.level.reset();
    out.add(std::move(g));
  }
  if (circuit.layout()) {
    std::vector<int> layout;
    for (int v : *circuit.layout()) layout.push_back(map_one(v));
    out.set_layout(std::move(layout));
  }
  return out;
}

PlacementReport best_placement(std::vector<PlacementCandidate> candidates,
                               const QuantumCircuit& nn_circuit, const CalibrationData& calibration,
                               const NativeGateSet& gates) {
  if (candidates.empty()) throw std::invalid_argument("no placement candidates");
  PlacementReport report;
  report.candidates = std::move(candidates);
  double sum = 0.0;
  report.min = std::numeric_limits<double>::infinity();
  report.max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < report.candidates.size(); ++i) {
    PlacementCandidate& c = report.candidates[i];
    c.score = success_rate(relabel(nn_circuit, c.assignment), calibration, gates);
    sum += c.score;
    report.min = std::min(report.min, c.score);
    report.max = std::max(report.max, c.score);
    const PlacementCandidate& b = report.candidates[report.best];
    if (c.score > b.score || (c.score == b.score && c.assignment < b.assignment)) report.best = i;
  }
  report.avg = sum / static_cast<double>(report.candidates.size());
  return report;
}

}  // namespace muqut
