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

#ifndef GENPERM_METRICS_HPP_
#define GENPERM_METRICS_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"
#include "genperm/types.hpp"

namespace genperm {

namespace detail {
class NeighborMatrix;
}  // namespace detail

/// Per-node sorted community lists. Detection keeps its own mutable copy
/// and evaluates hypotheses against it, so the core evaluators take this
/// view instead of a Cover.
using MembershipIndex = std::span<const std::vector<CommunityId>>;

/**
 * The quantities behind the GenPerm of vertex v in one of its communities.
 *
 * A neighbor u of v is internal when it shares at least one community
 * with v; x_e for edge {v,u} is the number of shared communities.
 * External neighbors are grouped by their communities for E_max.
 */
struct VertexContext {
  NodeId vertex = kInvalidNode;
  CommunityId community = kInvalidCommunity;
  std::size_t degree = 0;            ///< D(v)
  std::size_t internal = 0;          ///< I(v): internal neighbors
  std::size_t neighbors_in_community = 0;
  /// I^c(v) = sum over internal edges in c of 1/x_e.
  double effective_internal = 0.0;
  /// I^c(v) as an exact fraction over a denominator common to all of v's
  /// communities, so the contexts of one vertex sum to internal * den.
  /// den == 0 when the fraction does not fit 53 bits.
  std::uint64_t effective_internal_num = 0;
  std::uint64_t effective_internal_den = 0;
  std::size_t external_max = 1;      ///< E_max(v), floored to 1
  double clustering = 1.0;           ///< c_in^c(v)
  double genperm = 0.0;              ///< P_g^c(v)
};

/// Contexts for every community in `own`, with v's membership taken to be
/// `own` and every other node's from `membership`. Throws std::domain_error
/// for a degree-0 vertex.
std::vector<VertexContext> vertex_contexts(const Graph& g, MembershipIndex membership,
                                           NodeId v, std::span<const CommunityId> own);

std::vector<VertexContext> vertex_contexts(const Graph& g, const Cover& cover, NodeId v);

/// Sum of P_g^c over `own`, under the same hypothesis as vertex_contexts.
double genperm_total(const Graph& g, MembershipIndex membership, NodeId v,
                     std::span<const CommunityId> own);

/**
 * Incremental scorer for "v joins one more community" hypotheses.
 *
 * Built once per vertex update from v's current membership; score_with(c)
 * returns P_g^c(v) with v's membership taken as current ∪ {c}, matching
 * vertex_contexts on that hypothesis.
 */
class JoinScorer {
 public:
  JoinScorer(const Graph& g, MembershipIndex membership, NodeId v,
             std::span<const CommunityId> own);
  ~JoinScorer();
  JoinScorer(const JoinScorer&) = delete;
  JoinScorer& operator=(const JoinScorer&) = delete;

  double score_with(CommunityId c) const;

  /// P_g(v) with v's membership replaced by `hypothesis` (sorted), equal to
  /// genperm_total on that membership.
  double total(std::span<const CommunityId> hypothesis) const;

 private:
  const Graph& g_;
  MembershipIndex membership_;
  NodeId v_;
  std::span<const CommunityId> own_;
  std::vector<std::uint32_t> shared_;
  std::size_t internal_ = 0;
  std::size_t external_max_ = 1;
  // (community, external neighbor count), sorted by community.
  std::vector<std::pair<CommunityId, std::uint32_t>> external_;
  std::unique_ptr<detail::NeighborMatrix> matrix_;
  mutable std::vector<std::uint32_t> slots_;
  mutable std::vector<std::uint32_t> counts_;
};

/// Permanence of v under a disjoint partition. Throws std::invalid_argument
/// if v or one of its neighbors has other than one community, and
/// std::domain_error for a degree-0 vertex.
double permanence(const Graph& g, const Cover& partition, NodeId v);

/// P_g^c(v). Throws std::invalid_argument when v is not in c.
double genperm_vc(const Graph& g, const Cover& cover, NodeId v, CommunityId c);

/// P_g(v): sum over v's communities.
double genperm_vertex(const Graph& g, const Cover& cover, NodeId v);

/// P_g(G): mean of P_g(v), summed in ascending vertex order.
double genperm_network(const Graph& g, const Cover& cover);

/// P_g(v) for every vertex.
std::vector<double> genperm_per_vertex(const Graph& g, const Cover& cover);

struct GenPermEntry {
  NodeId vertex;
  CommunityId community;
  double genperm;
};

/// Every (v, c) pair with v in c, ordered by vertex then community.
std::vector<GenPermEntry> genperm_table(const Graph& g, const Cover& cover);

/// Overlapping modularity EQ, including the i == j terms. Throws
/// std::domain_error on a graph without edges.
double eq_modularity(const Graph& g, const Cover& cover);

/// Q_ov; communities with fewer than two nodes contribute 0. Throws
/// std::domain_error for a degree-0 node inside a scored community.
double qov_modularity(const Graph& g, const Cover& cover);

/// Fraction of nodes in at least one community of size >= 3.
double community_coverage(const Cover& cover);

/// Mean over all nodes of the number of size >= 3 communities holding them.
double overlap_coverage(const Cover& cover);

struct ScoreSet {
  double genperm = 0.0;
  double eq = 0.0;
  double qov = 0.0;
  double cc = 0.0;
  double oc = 0.0;
};

ScoreSet score_all(const Graph& g, const Cover& cover);

}  // namespace genperm

#endif  // GENPERM_METRICS_HPP_
