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

#ifndef GENPERM_TESTS_UNIT_HELPERS_HPP_
#define GENPERM_TESTS_UNIT_HELPERS_HPP_

#include <random>
#include <utility>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"
#include "oracle/naive.hpp"

namespace genperm::testing {

inline Graph make_graph(const std::vector<std::pair<int, int>>& edges, std::size_t n = 0) {
  std::vector<Edge> pairs;
  for (const auto& [u, v] : edges) pairs.emplace_back(u, v);
  return build_graph(pairs, n ? std::optional<std::size_t>(n) : std::nullopt).graph;
}

inline Cover make_cover(std::size_t n, const std::vector<std::vector<NodeId>>& cs) {
  return Cover::build(n, cs);
}

inline oracle::Communities to_oracle(const Cover& cover) {
  oracle::Communities out;
  for (const auto& c : cover.communities()) out.emplace_back(c.begin(), c.end());
  return out;
}

inline oracle::NaiveGraph to_naive(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(u, v);
  return oracle::NaiveGraph(static_cast<int>(g.node_count()), edges);
}

/// G(n, p) with every isolated node attached to a random other node.
inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(n, 0);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) {
        edges.emplace_back(u, v);
        ++degree[u];
        ++degree[v];
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    if (degree[u] > 0) continue;
    int v = pick(rng);
    while (v == u) v = pick(rng);
    edges.emplace_back(u, v);
    ++degree[u];
    ++degree[v];
  }
  return make_graph(edges, n);
}

/// k random communities; every node is placed in at least one.
inline Cover random_cover(std::mt19937_64& rng, int n, int k, double extra = 0.2) {
  std::uniform_int_distribution<int> pick(0, k - 1);
  std::bernoulli_distribution coin(extra);
  std::vector<std::vector<NodeId>> cs(k);
  for (int v = 0; v < n; ++v) {
    const int home = pick(rng);
    cs[home].push_back(v);
    for (int c = 0; c < k; ++c) {
      if (c != home && coin(rng)) cs[c].push_back(v);
    }
  }
  return Cover::build(n, cs);
}

/// Random disjoint partition into at most k labels.
inline Cover random_partition(std::mt19937_64& rng, int n, int k) {
  return random_cover(rng, n, k, 0.0);
}

}  // namespace genperm::testing

#endif  // GENPERM_TESTS_UNIT_HELPERS_HPP_
