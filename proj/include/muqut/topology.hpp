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
 * @file topology.hpp
 * @brief Device coupling graphs, calibration data and k-vertex subgraph
 *        extraction.
 *
 * Topology file format (`#` starts a comment):
 * @code
 * vertex 0 ge=0.00355 t1=77.30 t2=22.13
 * edge 1,0 mge=0.04
 * coord 0 0,0          # row,col, optional, enables grid placement
 * @endcode
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace muqut {

using Vertex = int;
/// Undirected edge, always stored as (min, max).
using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

struct VertexCalibration {
  std::optional<double> gate_error;  ///< single-qubit gate error (probability)
  std::optional<double> t1;          ///< microseconds
  std::optional<double> t2;          ///< microseconds
};

struct CalibrationData {
  std::map<Vertex, VertexCalibration> vertices;
  std::map<Edge, double> edge_error;  ///< two-qubit gate error (probability)

  [[nodiscard]] bool empty() const noexcept { return vertices.empty() && edge_error.empty(); }
};

struct GridCoord {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

class TopologyGraph {
 public:
  TopologyGraph() = default;

  /// Throws std::invalid_argument on duplicates.
  void add_vertex(Vertex v);
  /// Throws std::invalid_argument on self-loops, duplicates or unknown endpoints.
  void add_edge(Vertex a, Vertex b);
  void set_coord(Vertex v, GridCoord coord);

  [[nodiscard]] const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }
  [[nodiscard]] std::size_t size() const noexcept { return vertices_.size(); }

  [[nodiscard]] bool has_vertex(Vertex v) const;
  [[nodiscard]] bool has_edge(Vertex a, Vertex b) const;
  /// Position of `v` in vertices(); throws std::out_of_range if absent.
  [[nodiscard]] std::size_t index_of(Vertex v) const;
  [[nodiscard]] std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  /// Sorted neighbours of v; throws std::out_of_range for unknown vertices.
  [[nodiscard]] const std::vector<Vertex>& neighbors(Vertex v) const;

  [[nodiscard]] bool is_connected() const;

  /// Vertex-induced subgraph; calibration and coordinates are carried along.
  [[nodiscard]] TopologyGraph induced(const std::vector<Vertex>& vs) const;

  /// Hop distance between two vertices, -1 when disconnected.
  [[nodiscard]] std::vector<std::vector<int>> distance_matrix() const;

  [[nodiscard]] const std::map<Vertex, GridCoord>& coords() const noexcept { return coords_; }
  /// True when every vertex has a grid coordinate.
  [[nodiscard]] bool has_grid() const noexcept {
    return !vertices_.empty() && coords_.size() == vertices_.size();
  }

  CalibrationData calibration;

 private:
  std::vector<Vertex> vertices_;            // sorted
  std::vector<Edge> edges_;                 // sorted
  std::vector<std::vector<Vertex>> adj_;    // parallel to vertices_
  std::map<Vertex, GridCoord> coords_;
};

/// Parses the topology file format. Throws ParseError.
TopologyGraph parse_topology(std::string_view text);
TopologyGraph load_topology(const std::string& path);
std::string emit_topology(const TopologyGraph& graph);

/// neighbors(T, v) as a free function, matching the rest of the API.
inline const std::vector<Vertex>& neighbors(const TopologyGraph& graph, Vertex v) {
  return graph.neighbors(v);
}

/// Largest graph is_isomorphic() accepts.
inline constexpr std::size_t kMaxIsomorphismVertices = 12;

/// Exhaustive isomorphism test with degree pruning. Throws
/// std::invalid_argument when either graph exceeds kMaxIsomorphismVertices.
bool is_isomorphic(const TopologyGraph& g1, const TopologyGraph& g2);

struct ExtractionOptions {
  std::size_t k = 0;
  std::size_t attempts = 200;
  double probability = 0.5;
  std::uint64_t seed = 1;
};

struct SubgraphList {
  std::vector<TopologyGraph> graphs;  ///< pairwise non-isomorphic, each connected, k vertices
  std::uint64_t seed = 0;
  std::size_t attempts = 0;
  std::size_t stalled = 0;            ///< attempts whose growth died below k vertices
};

/// Randomized k-vertex subgraph extraction: each attempt grows a vertex set
/// from a random start, accepting each newly seen neighbour with probability
/// p, then keeps the induced subgraph when it is new up to isomorphism.
/// Throws std::invalid_argument when k is 0 or exceeds the graph, or p is not
/// in (0, 1].
SubgraphList extract_subgraphs(const TopologyGraph& graph, const ExtractionOptions& options);

}  // namespace muqut
