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

#ifndef GENPERM_COVER_HPP_
#define GENPERM_COVER_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "genperm/graph.hpp"
#include "genperm/types.hpp"

namespace genperm {

/**
 * A set of possibly overlapping communities over a node universe
 * [0, node_count), with the reverse node -> communities index.
 *
 * Canonical form: every community is a sorted, duplicate-free, non-empty
 * node list; identical communities are collapsed; communities are ordered
 * lexicographically; every node belongs to at least one community (nodes
 * absent from the input get implicit singleton communities). Two covers
 * describing the same set system therefore compare equal.
 */
class Cover {
 public:
  Cover() = default;

  /// Builds the canonical form. Throws std::invalid_argument for ids
  /// outside [0, node_count).
  static Cover build(std::size_t node_count,
                     std::vector<std::vector<NodeId>> communities);

  std::size_t node_count() const { return membership_.size(); }
  std::size_t community_count() const { return communities_.size(); }

  std::span<const NodeId> members(CommunityId c) const { return communities_[c]; }
  const std::vector<std::vector<NodeId>>& communities() const { return communities_; }

  /// Sorted community ids containing v (O_v = its size).
  std::span<const CommunityId> memberships(NodeId v) const { return membership_[v]; }
  const std::vector<std::vector<CommunityId>>& membership_index() const {
    return membership_;
  }

  bool contains(CommunityId c, NodeId v) const;

  /// Number of communities containing both u and v (x_e for edge {u, v}).
  std::size_t shared_count(NodeId u, NodeId v) const;

  /// Number of nodes that were uncovered in the input and received an
  /// implicit singleton community.
  std::size_t implicit_singletons() const { return implicit_singletons_; }
  /// Number of input communities dropped as exact duplicates.
  std::size_t duplicates_collapsed() const { return duplicates_collapsed_; }
  /// True for a singleton added because its node was absent from the input.
  bool is_implicit(CommunityId c) const {
    return communities_[c].size() == 1 && !explicit_[communities_[c][0]];
  }

  bool is_disjoint() const;

  friend bool operator==(const Cover& a, const Cover& b) {
    return a.communities_ == b.communities_ && a.membership_.size() == b.membership_.size();
  }

 private:
  std::vector<std::vector<NodeId>> communities_;
  std::vector<std::vector<CommunityId>> membership_;
  std::vector<bool> explicit_;
  std::size_t implicit_singletons_ = 0;
  std::size_t duplicates_collapsed_ = 0;
};

/// Cover over g's node universe.
Cover build_cover(const Graph& g, std::vector<std::vector<NodeId>> communities);

/// Per-edge sharing multiplicity x_e, indexed by EdgeId.
std::vector<std::size_t> edge_sharing(const Graph& g, const Cover& cover);

/// R: the largest x_e over all edges; 0 when no edge is internal anywhere.
std::size_t max_edge_sharing(const Graph& g, const Cover& cover);

struct CommunityStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  /// edges / C(nodes, 2); 0 for a singleton.
  double density = 0.0;
};

CommunityStats community_stats(const Graph& g, const Cover& cover, CommunityId c);

/// Cover restricted to `sub`'s node set and remapped to its ids; empty
/// intersections are dropped.
Cover restrict_cover(const Cover& cover, const Subgraph& sub);

}  // namespace genperm

#endif  // GENPERM_COVER_HPP_
