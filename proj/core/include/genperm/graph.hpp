// Copyright 2026 The GenPerm Authors
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

#ifndef GENPERM_GRAPH_HPP_
#define GENPERM_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "genperm/types.hpp"

namespace genperm {

/**
 * Immutable undirected simple graph in compressed adjacency form.
 *
 * Node ids are dense in [0, node_count()). Each adjacency list is sorted
 * ascending, and the parallel edge-id array maps every adjacency slot to
 * the index of the corresponding entry of edges().
 */
class Graph {
 public:
  Graph() = default;

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], degree(v)};
  }
  /// Edge ids aligned with neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {edge_ids_.data() + offsets_[v], degree(v)};
  }

  bool has_edge(NodeId u, NodeId v) const;
  /// Id of edge {u, v}, or nullopt when absent.
  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const;

  /// Edges with first < second, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

 private:
  friend struct GraphBuilderAccess;

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<EdgeId> edge_ids_;
  std::vector<Edge> edges_;
};

struct BuildReport {
  std::size_t input_pairs = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t self_loops_dropped = 0;
};

struct BuiltGraph {
  Graph graph;
  BuildReport report;
};

/// Raw id pair as read from input; ids are checked against NodeId width.
using RawEdge = std::pair<std::uint64_t, std::uint64_t>;

/**
 * Builds a simple graph. Duplicate pairs (in either orientation) are
 * collapsed and self-loops dropped; both are counted in the report.
 * node_count is max id + 1 or the hint, whichever is larger.
 *
 * Throws std::overflow_error when an id does not fit NodeId.
 */
BuiltGraph build_graph(std::span<const RawEdge> pairs,
                       std::optional<std::size_t> node_count_hint = std::nullopt);

/// Convenience overload for already-narrowed ids.
BuiltGraph build_graph(std::span<const Edge> pairs,
                       std::optional<std::size_t> node_count_hint = std::nullopt);

struct Subgraph {
  Graph graph;
  /// new id -> original id.
  std::vector<NodeId> to_original;
  /// original id -> new id, kInvalidNode for dropped nodes.
  std::vector<NodeId> from_original;
};

/// Subgraph induced by `nodes`, ids remapped contiguously in ascending
/// original order. Throws std::invalid_argument on an empty set or an out
/// of range id. Duplicate ids in `nodes` are ignored.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

inline constexpr std::uint32_t kUnreachable = UINT32_MAX;

/// Unweighted shortest-path distances; kUnreachable marks other components.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

/// Component label per node. Labels are 0.. in order of the smallest node
/// id of each component.
std::vector<std::uint32_t> connected_components(const Graph& g);

std::size_t component_count(std::span<const std::uint32_t> labels);

}  // namespace genperm

#endif  // GENPERM_GRAPH_HPP_
