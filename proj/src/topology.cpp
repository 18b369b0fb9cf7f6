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

#include "muqut/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "muqut/error.hpp"
#include "muqut/rng.hpp"
#include "text_util.hpp"

namespace muqut {

void TopologyGraph::add_vertex(Vertex v) {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it != vertices_.end() && *it == v) {
    throw std::invalid_argument("duplicate vertex " + std::to_string(v));
  }
  const auto pos = it - vertices_.begin();
  vertices_.insert(it, v);
  adj_.insert(adj_.begin() + pos, std::vector<Vertex>{});
}

void TopologyGraph::add_edge(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("self-loop on vertex " + std::to_string(a));
  if (!has_vertex(a) || !has_vertex(b)) {
    throw std::invalid_argument("edge " + std::to_string(a) + "," + std::to_string(b) +
                                " references an undeclared vertex");
  }
  const Edge e = make_edge(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it != edges_.end() && *it == e) {
    throw std::invalid_argument("duplicate edge " + std::to_string(a) + "," + std::to_string(b));
  }
  edges_.insert(it, e);
  auto& na = adj_[index_of(a)];
  na.insert(std::lower_bound(na.begin(), na.end(), b), b);
  auto& nb = adj_[index_of(b)];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
}

void TopologyGraph::set_coord(Vertex v, GridCoord coord) {
  if (!has_vertex(v)) throw std::invalid_argument("coord for undeclared vertex " + std::to_string(v));
  coords_[v] = coord;
}

bool TopologyGraph::has_vertex(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool TopologyGraph::has_edge(Vertex a, Vertex b) const {
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(a, b));
}

std::size_t TopologyGraph::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
  return static_cast<std::size_t>(it - vertices_.begin());
}

const std::vector<Vertex>& TopologyGraph::neighbors(Vertex v) const { return adj_[index_of(v)]; }

bool TopologyGraph::is_connected() const {
  if (vertices_.empty()) return true;
  std::vector<bool> seen(vertices_.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (Vertex w : adj_[i]) {
      const std::size_t j = index_of(w);
      if (!seen[j]) {
        seen[j] = true;
        ++count;
        queue.push_back(j);
      }
    }
  }
  return count == vertices_.size();
}

TopologyGraph TopologyGraph::induced(const std::vector<Vertex>& vs) const {
  TopologyGraph sub;
  for (Vertex v : vs) {
    if (!has_vertex(v)) throw std::out_of_range("unknown vertex " + std::to_string(v));
    sub.add_vertex(v);
  }
  for (const Edge& e : edges_) {
    if (sub.has_vertex(e.first) && sub.has_vertex(e.second)) sub.add_edge(e.first, e.second);
  }
  for (Vertex v : sub.vertices_) {
    if (auto it = coords_.find(v); it != coords_.end()) sub.coords_[v] = it->second;
    if (auto it = calibration.vertices.find(v); it != calibration.vertices.end()) {
      sub.calibration.vertices[v] = it->second;
    }
  }
  for (const Edge& e : sub.edges_) {
    if (auto it = calibration.edge_error.find(e); it != calibration.edge_error.end()) {
      sub.calibration.edge_error[e] = it->second;
    }
  }
  return sub;
}

std::vector<std::vector<int>> TopologyGraph::distance_matrix() const {
  const std::size_t n = vertices_.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      for (Vertex w : adj_[i]) {
        const std::size_t j = index_of(w);
        if (dist[s][j] < 0) {
          dist[s][j] = dist[s][i] + 1;
          queue.push_back(j);
        }
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------
// File format

namespace {

double parse_rate(std::string_view key, std::string_view value, std::size_t line) {
  auto v = detail::to_double(value);
  if (!v) throw ParseError(line, "invalid value for " + std::string(key));
  if (key == "ge" || key == "mge") {
    if (*v < 0.0 || *v > 1.0) {
      throw ParseError(line, std::string(key) + " must be a probability in [0, 1], got " +
                                 std::string(value));
    }
  } else if (*v <= 0.0) {
    throw ParseError(line, std::string(key) + " must be positive, got " + std::string(value));
  }
  return *v;
}

std::pair<int, int> parse_pair(std::string_view text, std::size_t line) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  auto parts = detail::split(compact, ',');
  if (parts.size() != 2) throw ParseError(line, "expected '<a>,<b>'");
  auto a = detail::to_int(parts[0]);
  auto b = detail::to_int(parts[1]);
  if (!a || !b) throw ParseError(line, "expected integers in '" + compact + "'");
  return {*a, *b};
}

// Splits "1, 0 mge=0.04" into the positional part and key=value attributes.
std::pair<std::string, std::vector<std::string_view>> split_attributes(std::string_view args) {
  std::string positional;
  std::vector<std::string_view> attrs;
  for (std::string_view token : detail::split_ws(args)) {
    if (token.find('=') != std::string_view::npos) {
      attrs.push_back(token);
    } else {
      positional += token;
    }
  }
  return {positional, attrs};
}

}  // namespace

TopologyGraph parse_topology(std::string_view text) {
  TopologyGraph graph;
  struct PendingEdge {
    Vertex a, b;
    std::optional<double> mge;
    std::size_t line;
  };
  struct PendingCoord {
    Vertex v;
    GridCoord coord;
    std::size_t line;
  };
  std::vector<PendingEdge> edges;
  std::vector<PendingCoord> coords;

  std::size_t line_no = 0;
  for (std::string_view raw : detail::lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto [keyword, args] = detail::split_keyword(line);

    if (keyword == "vertex") {
      auto [positional, attrs] = split_attributes(args);
      auto id = detail::to_int(positional);
      if (!id) throw ParseError(line_no, "invalid vertex id '" + positional + "'");
      if (graph.has_vertex(*id)) throw ParseError(line_no, "duplicate vertex " + positional);
      graph.add_vertex(*id);
      VertexCalibration cal;
      for (std::string_view attr : attrs) {
        const auto eq = attr.find('=');
        const std::string_view key = attr.substr(0, eq);
        const std::string_view value = attr.substr(eq + 1);
        if (key == "ge") {
          cal.gate_error = parse_rate(key, value, line_no);
        } else if (key == "t1") {
          cal.t1 = parse_rate(key, value, line_no);
        } else if (key == "t2") {
          cal.t2 = parse_rate(key, value, line_no);
        } else {
          throw ParseError(line_no, "unknown vertex attribute '" + std::string(key) + "'");
        }
      }
      if (cal.gate_error || cal.t1 || cal.t2) graph.calibration.vertices[*id] = cal;
    } else if (keyword == "edge") {
      auto [positional, attrs] = split_attributes(args);
      auto [a, b] = parse_pair(positional, line_no);
      std::optional<double> mge;
      for (std::string_view attr : attrs) {
        const auto eq = attr.find('=');
        const std::string_view key = attr.substr(0, eq);
        if (key != "mge") {
          throw ParseError(line_no, "unknown edge attribute '" + std::string(key) + "'");
        }
        mge = parse_rate(key, attr.substr(eq + 1), line_no);
      }
      edges.push_back({a, b, mge, line_no});
    } else if (keyword == "coord") {
      auto tokens = detail::split_ws(args);
      if (tokens.size() < 2) throw ParseError(line_no, "expected 'coord <id> <row>,<col>'");
      auto id = detail::to_int(tokens[0]);
      if (!id) throw ParseError(line_no, "invalid vertex id '" + std::string(tokens[0]) + "'");
      std::string rest;
      for (std::size_t i = 1; i < tokens.size(); ++i) rest += tokens[i];
      auto [row, col] = parse_pair(rest, line_no);
      coords.push_back({*id, GridCoord{row, col}, line_no});
    } else {
      throw ParseError(line_no, "unrecognized statement '" + std::string(line) + "'");
    }
  }

  for (const PendingEdge& e : edges) {
    if (!graph.has_vertex(e.a) || !graph.has_vertex(e.b)) {
      throw ParseError(e.line, "edge " + std::to_string(e.a) + "," + std::to_string(e.b) +
                                   " references an undeclared vertex");
    }
    try {
      graph.add_edge(e.a, e.b);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(e.line, ex.what());
    }
    if (e.mge) graph.calibration.edge_error[make_edge(e.a, e.b)] = *e.mge;
  }
  for (const PendingCoord& c : coords) {
    if (!graph.has_vertex(c.v)) {
      throw ParseError(c.line, "coord for undeclared vertex " + std::to_string(c.v));
    }
    graph.set_coord(c.v, c.coord);
  }
  std::set<GridCoord> used;
  for (const auto& [v, coord] : graph.coords()) {
    if (!used.insert(coord).second) {
      throw ParseError(0, "two vertices share grid coordinate " + std::to_string(coord.row) + "," +
                              std::to_string(coord.col));
    }
  }
  for (const Edge& e : graph.edges()) {
    auto ca = graph.coords().find(e.first);
    auto cb = graph.coords().find(e.second);
    if (ca == graph.coords().end() || cb == graph.coords().end()) continue;
    const int manhattan =
        std::abs(ca->second.row - cb->second.row) + std::abs(ca->second.col - cb->second.col);
    if (manhattan != 1) {
      throw ParseError(0, "edge " + std::to_string(e.first) + "," + std::to_string(e.second) +
                              " joins non-adjacent grid coordinates");
    }
  }
  return graph;
}

TopologyGraph load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot read topology file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_topology(buffer.str());
}

std::string emit_topology(const TopologyGraph& graph) {
  std::string out;
  for (Vertex v : graph.vertices()) {
    out += "vertex " + std::to_string(v);
    if (auto it = graph.calibration.vertices.find(v); it != graph.calibration.vertices.end()) {
      if (it->second.gate_error) out += " ge=" + detail::format_double(*it->second.gate_error);
      if (it->second.t1) out += " t1=" + detail::format_double(*it->second.t1);
      if (it->second.t2) out += " t2=" + detail::format_double(*it->second.t2);
    }
    out += '\n';
  }
  for (const Edge& e : graph.edges()) {
    out += "edge " + std::to_string(e.first) + "," + std::to_string(e.second);
    if (auto it = graph.calibration.edge_error.find(e); it != graph.calibration.edge_error.end()) {
      out += " mge=" + detail::format_double(it->second);
    }
    out += '\n';
  }
  for (const auto& [v, c] : graph.coords()) {
    out += "coord " + std::to_string(v) + " " + std::to_string(c.row) + "," + std::to_string(c.col) +
           "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

using Mask = std::uint16_t;

struct DenseGraph {
  std::vector<Mask> adj;
  std::vector<int> degree;
};

DenseGraph to_dense(const TopologyGraph& g) {
  DenseGraph d;
  d.adj.assign(g.size(), 0);
  d.degree.assign(g.size(), 0);
  for (const Edge& e : g.edges()) {
    const auto i = g.index_of(e.first);
    const auto j = g.index_of(e.second);
    d.adj[i] |= static_cast<Mask>(1u << j);
    d.adj[j] |= static_cast<Mask>(1u << i);
    ++d.degree[i];
    ++d.degree[j];
  }
  return d;
}

bool extend(const DenseGraph& a, const DenseGraph& b, const std::vector<std::size_t>& order,
            std::size_t depth, std::vector<int>& image, Mask used) {
  if (depth == order.size()) return true;
  const std::size_t u = order[depth];
  for (std::size_t v = 0; v < b.adj.size(); ++v) {
    if ((used >> v) & 1u) continue;
    if (a.degree[u] != b.degree[v]) continue;
    bool ok = true;
    for (std::size_t k = 0; k < depth && ok; ++k) {
      const std::size_t w = order[k];
      const bool ea = (a.adj[u] >> w) & 1u;
      const bool eb = (b.adj[v] >> image[w]) & 1u;
      ok = ea == eb;
    }
    if (!ok) continue;
    image[u] = static_cast<int>(v);
    if (extend(a, b, order, depth + 1, image, static_cast<Mask>(used | (1u << v)))) return true;
  }
  return false;
}

}  // namespace

bool is_isomorphic(const TopologyGraph& g1, const TopologyGraph& g2) {
  if (g1.size() > kMaxIsomorphismVertices || g2.size() > kMaxIsomorphismVertices) {
    throw std::invalid_argument("is_isomorphic supports at most " +
                                std::to_string(kMaxIsomorphismVertices) + " vertices");
  }
  if (g1.size() != g2.size() || g1.edges().size() != g2.edges().size()) return false;
  const DenseGraph a = to_dense(g1);
  const DenseGraph b = to_dense(g2);
  std::vector<int> da = a.degree, db = b.degree;
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db) return false;

  // Highest-degree vertices first: they constrain the search most.
  std::vector<std::size_t> order(g1.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a.degree[x] > a.degree[y]; });
  std::vector<int> image(g1.size(), -1);
  return extend(a, b, order, 0, image, 0);
}

// ---------------------------------------------------------------------------
// Extraction

SubgraphList extract_subgraphs(const TopologyGraph& graph, const ExtractionOptions& options) {
  if (options.k == 0 || options.k > graph.size()) {
    throw std::invalid_argument("k = " + std::to_string(options.k) + " must be in [1, " +
                                std::to_string(graph.size()) + "]");
  }
  if (options.k > kMaxIsomorphismVertices) {
    throw std::invalid_argument("k above the isomorphism limit of " +
                                std::to_string(kMaxIsomorphismVertices));
  }
  if (!(options.probability > 0.0 && options.probability <= 1.0)) {
    throw std::invalid_argument("acceptance probability must be in (0, 1]");
  }

  SubgraphList list;
  list.seed = options.seed;
  list.attempts = options.attempts;
  Rng rng(options.seed);
  const auto& vs = graph.vertices();

  for (std::size_t attempt = 0; attempt < options.attempts; ++attempt) {
    const Vertex start = vs[uniform_below(rng, vs.size())];
    std::vector<Vertex> frontier{start};
    std::set<Vertex> considered{start};
    std::vector<Vertex> chosen;

    while (!frontier.empty()) {
      const Vertex v = frontier.back();
      frontier.pop_back();
      chosen.push_back(v);
      if (chosen.size() == options.k) break;
      for (Vertex w : graph.neighbors(v)) {
        if (considered.count(w) != 0) continue;
        if (bernoulli(rng, options.probability)) {
          considered.insert(w);
          frontier.push_back(w);
        }
      }
    }
    if (chosen.size() < options.k) {
      ++list.stalled;
      continue;
    }
    std::sort(chosen.begin(), chosen.end());
    TopologyGraph candidate = graph.induced(chosen);
    const bool seen = std::any_of(list.graphs.begin(), list.graphs.end(),
                                  [&](const TopologyGraph& g) { return is_isomorphic(g, candidate); });
    if (!seen) list.graphs.push_back(std::move(candidate));
  }
  return list;
}

}  // namespace muqut
