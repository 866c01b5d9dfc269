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

#ifndef GENPERM_DETECT_HPP_
#define GENPERM_DETECT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"

namespace genperm {

enum class VertexOrder { kAscendingId, kShuffle };

struct DetectConfig {
  std::size_t max_iter = 15;
  VertexOrder ordering = VertexOrder::kAscendingId;
  /// Seed for VertexOrder::kShuffle. One permutation is drawn per run and
  /// reused by every sweep.
  std::uint64_t seed = 0;
  /// A sweep ends the run when |objective - previous| <= tolerance. The
  /// default 0 stops only on exact repetition.
  double objective_tolerance = 0.0;
  /// Run each connected component independently and merge the covers.
  /// When false a disconnected graph is rejected.
  bool per_component = false;
  /// After the last sweep, merge pairs of overlapping communities whenever
  /// the merge does not lower network GenPerm. GenPerm scores a clique and
  /// its fan of overlapping triangles identically; this picks the cover
  /// with fewer communities among such ties.
  bool merge_ties = true;
  /// After the last sweep, let a vertex leave a community when that raises
  /// the summed GenPerm of the vertex and its neighbors. Runs before the
  /// tie consolidation.
  bool prune_memberships = true;
};

struct DetectionResult {
  Cover cover;
  std::vector<double> per_vertex_genperm;
  /// Network GenPerm recomputed from scratch after every sweep.
  std::vector<double> objective_history;
  /// GenPerm of the initial one-community-per-edge cover.
  double initial_objective = 0.0;
  std::size_t iterations_used = 0;
  /// True when the run stopped because the objective repeated.
  bool converged = false;
  /// Community merges made by the tie consolidation pass.
  std::size_t merges = 0;
  /// Memberships dropped by the pruning pass.
  std::size_t pruned = 0;
  std::vector<std::string> warnings;
};

/**
 * MaxGenPerm: greedy per-vertex GenPerm maximization.
 *
 * Starts from one community per edge. Every sweep visits the vertices in
 * the configured order. A vertex whose GenPerm is already 1 is skipped.
 * Otherwise each community touching a neighbor is scored as an addition
 * to the current membership, the positively scoring ones are rescored
 * jointly, and the joint set replaces the membership only when its total
 * is strictly larger. A vertex with no positive candidate and a negative
 * total becomes a singleton. Empty communities are dropped and their ids
 * are never reused. With merge_ties set, a consolidation pass over
 * overlapping community pairs follows the last sweep; the final history
 * entry is then the objective of the consolidated cover.
 *
 * Throws std::invalid_argument for max_iter == 0, std::domain_error for
 * isolated vertices, and std::invalid_argument for a disconnected graph
 * unless per_component is set.
 */
DetectionResult max_genperm(const Graph& g, const DetectConfig& cfg = {});

struct ConstantCommunities {
  /// Groups sorted by their smallest member; members ascending.
  std::vector<std::vector<NodeId>> groups;
  double phi = 0.0;
};

/// Vertex groups that share a community in every run. u and v are related
/// when some community of each run contains both; groups are the
/// connected components of that relation. Requires at least two runs over
/// the same node count.
ConstantCommunities constant_communities(const std::vector<Cover>& runs);

}  // namespace genperm

#endif  // GENPERM_DETECT_HPP_
