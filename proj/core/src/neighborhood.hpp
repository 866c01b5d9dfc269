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

#ifndef GENPERM_SRC_NEIGHBORHOOD_HPP_
#define GENPERM_SRC_NEIGHBORHOOD_HPP_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "genperm/graph.hpp"

namespace genperm::detail {

// Adjacency among the neighbors of one vertex, addressed by slot (the
// position of the neighbor in g.neighbors(v)). Dense bit rows make the
// edge count of any neighbor subset a handful of popcounts. Vertices of
// very high degree fall back to sorted-list intersection.
class NeighborMatrix {
 public:
  static constexpr std::size_t kDenseLimit = 4096;

  explicit NeighborMatrix(const Graph& g) : g_(&g) {}
  NeighborMatrix(const Graph& g, NodeId v) : g_(&g) { rebuild(g, v); }

  // Re-targets the matrix at vertex v of g, reusing storage.
  void rebuild(const Graph& g, NodeId v) {
    g_ = &g;
    adj_ = g.neighbors(v);
    const std::size_t d = adj_.size();
    words_ = 0;
    if (d > kDenseLimit) return;
    words_ = (d + 63) / 64;
    rows_.assign(d * words_, 0);
    mask_.assign(words_, 0);
    for (std::size_t i = 0; i < d; ++i) {
      const auto theirs = g.neighbors(adj_[i]);
      std::size_t j = 0;
      std::size_t k = 0;
      while (j < d && k < theirs.size()) {
        if (adj_[j] < theirs[k]) {
          ++j;
        } else if (theirs[k] < adj_[j]) {
          ++k;
        } else {
          rows_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
          ++j;
          ++k;
        }
      }
    }
  }

  // Number of edges with both endpoints among the given slots (ascending).
  std::size_t edges_among(std::span<const std::uint32_t> slots) const {
    if (slots.size() < 2) return 0;
    if (words_ == 0) return sparse_edges_among(slots);
    for (const auto s : slots) mask_[s / 64] |= std::uint64_t{1} << (s % 64);
    std::size_t twice = 0;
    for (const auto s : slots) {
      const std::uint64_t* row = rows_.data() + s * words_;
      for (std::size_t w = 0; w < words_; ++w) twice += std::popcount(row[w] & mask_[w]);
    }
    for (const auto s : slots) mask_[s / 64] = 0;
    return twice / 2;
  }

 private:
  std::size_t sparse_edges_among(std::span<const std::uint32_t> slots) const {
    std::vector<NodeId> nodes;
    nodes.reserve(slots.size());
    for (const auto s : slots) nodes.push_back(adj_[s]);
    std::size_t twice = 0;
    for (const NodeId a : nodes) {
      const auto theirs = g_->neighbors(a);
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < theirs.size() && j < nodes.size()) {
        if (theirs[i] < nodes[j]) {
          ++i;
        } else if (nodes[j] < theirs[i]) {
          ++j;
        } else {
          ++twice;
          ++i;
          ++j;
        }
      }
    }
    return twice / 2;
  }

  const Graph* g_;
  std::span<const NodeId> adj_;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
  mutable std::vector<std::uint64_t> mask_;
};

}  // namespace genperm::detail

#endif  // GENPERM_SRC_NEIGHBORHOOD_HPP_
