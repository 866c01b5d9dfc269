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

#include "genperm/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace genperm {

struct GraphBuilderAccess {
  static Graph from_sorted_unique_edges(std::vector<Edge> edges, std::size_t n) {
    Graph g;
    g.edges_ = std::move(edges);
    g.offsets_.assign(n + 1, 0);
    for (const auto& [u, v] : g.edges_) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.neighbors_.resize(2 * g.edges_.size());
    g.edge_ids_.resize(2 * g.edges_.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (first, second), so filling in edge order keeps
    // every adjacency list sorted: for node w, the entries where w is the
    // second endpoint (neighbor < w) all come from edges with first < w,
    // which precede the edges with first == w.
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
      const auto [u, v] = g.edges_[e];
      g.neighbors_[cursor[v]] = u;
      g.edge_ids_[cursor[v]++] = e;
    }
    for (EdgeId e = 0; e < g.edges_.size(); ++e) {
      const auto [u, v] = g.edges_[e];
      g.neighbors_[cursor[u]] = v;
      g.edge_ids_[cursor[u]++] = e;
    }
    return g;
  }
};

namespace {

BuiltGraph finish_build(std::vector<Edge> edges, std::size_t max_id_plus_one,
                        std::optional<std::size_t> hint, BuildReport report) {
  std::sort(edges.begin(), edges.end());
  const auto last = std::unique(edges.begin(), edges.end());
  report.duplicates_dropped += static_cast<std::size_t>(edges.end() - last);
  edges.erase(last, edges.end());
  std::size_t n = max_id_plus_one;
  if (hint && *hint > n) n = *hint;
  if (n > static_cast<std::size_t>(kInvalidNode)) {
    throw std::overflow_error("node count exceeds NodeId width");
  }
  if (edges.size() > std::numeric_limits<EdgeId>::max()) {
    throw std::overflow_error("edge count exceeds EdgeId width");
  }
  return {GraphBuilderAccess::from_sorted_unique_edges(std::move(edges), n), report};
}

}  // namespace

BuiltGraph build_graph(std::span<const RawEdge> pairs,
                       std::optional<std::size_t> node_count_hint) {
  BuildReport report;
  report.input_pairs = pairs.size();
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  std::size_t bound = 0;
  for (const auto& [a, b] : pairs) {
    // kInvalidNode is reserved as a sentinel.
    if (a >= kInvalidNode || b >= kInvalidNode) {
      throw std::overflow_error("node id " + std::to_string(std::max(a, b)) +
                                " exceeds NodeId width");
    }
    bound = std::max<std::size_t>(bound, std::max(a, b) + 1);
    if (a == b) {
      ++report.self_loops_dropped;
      continue;
    }
    const auto u = static_cast<NodeId>(std::min(a, b));
    const auto v = static_cast<NodeId>(std::max(a, b));
    edges.emplace_back(u, v);
  }
  return finish_build(std::move(edges), bound, node_count_hint, report);
}

BuiltGraph build_graph(std::span<const Edge> pairs,
                       std::optional<std::size_t> node_count_hint) {
  std::vector<RawEdge> raw(pairs.begin(), pairs.end());
  return build_graph(std::span<const RawEdge>(raw), node_count_hint);
}

bool Graph::has_edge(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

std::optional<EdgeId> Graph::find_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto adj = neighbors(u);
  const auto it = std::lower_bound(adj.begin(), adj.end(), v);
  if (it == adj.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - adj.begin())];
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw std::invalid_argument("induced_subgraph: empty node set");
  Subgraph sub;
  sub.from_original.assign(g.node_count(), kInvalidNode);
  for (const NodeId v : nodes) {
    if (v >= g.node_count()) {
      throw std::invalid_argument("induced_subgraph: node id " + std::to_string(v) +
                                  " out of range");
    }
    sub.from_original[v] = 0;
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (sub.from_original[v] != kInvalidNode) {
      sub.from_original[v] = static_cast<NodeId>(sub.to_original.size());
      sub.to_original.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const NodeId v : sub.to_original) {
    for (const NodeId w : g.neighbors(v)) {
      if (w > v && sub.from_original[w] != kInvalidNode) {
        edges.emplace_back(sub.from_original[v], sub.from_original[w]);
      }
    }
  }
  sub.graph = build_graph(std::span<const Edge>(edges), sub.to_original.size()).graph;
  return sub;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) throw std::invalid_argument("bfs_distances: bad source");
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId v = frontier[head];
    for (const NodeId w : g.neighbors(v)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> connected_components(const Graph& g) {
  constexpr std::uint32_t kUnset = UINT32_MAX;
  std::vector<std::uint32_t> label(g.node_count(), kUnset);
  std::vector<NodeId> stack;
  std::uint32_t next = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (label[s] != kUnset) continue;
    label[s] = next;
    stack.assign(1, s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (const NodeId w : g.neighbors(v)) {
        if (label[w] == kUnset) {
          label[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(std::span<const std::uint32_t> labels) {
  if (labels.empty()) return 0;
  return static_cast<std::size_t>(*std::max_element(labels.begin(), labels.end())) + 1;
}

}  // namespace genperm
