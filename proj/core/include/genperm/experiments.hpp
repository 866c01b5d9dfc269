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

#ifndef GENPERM_EXPERIMENTS_HPP_
#define GENPERM_EXPERIMENTS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"
#include "genperm/metrics.hpp"

namespace genperm {

// ---------------------------------------------------------------------------
// Perturbation
// ---------------------------------------------------------------------------

enum class PerturbStrategy { kEdge, kRandom, kCommunity };

const char* to_string(PerturbStrategy s);
/// Parses "edge", "random" or "community"; throws std::invalid_argument.
PerturbStrategy parse_perturb_strategy(const std::string& name);

struct PerturbationSpec {
  PerturbStrategy strategy = PerturbStrategy::kEdge;
  /// Intensity in (0, 0.5].
  double p = 0.1;
  std::uint64_t seed = 0;
};

/**
 * Returns a perturbed copy of `truth`. A swap exchanges the full membership
 * lists of two nodes.
 *
 *  - edge: floor(p * |E|) swaps, each across an edge whose endpoints share
 *    no community in the current state.
 *  - random: floor(p * |V|) swaps between two uniformly drawn nodes with
 *    different membership lists.
 *  - community: for every community s (in id order), floor(p * |s|) current
 *    members swap with as many uniformly drawn non-members.
 *
 * Throws std::invalid_argument for p outside (0, 0.5] and
 * std::runtime_error when no eligible edge or pair turns up within
 * 100 draws per requested swap.
 */
Cover perturb(const Graph& g, const Cover& truth, const PerturbationSpec& spec);

inline constexpr std::array<const char*, 5> kSweepMetrics = {"genperm", "eq", "qov", "cc",
                                                             "oc"};

struct SweepRow {
  PerturbStrategy strategy = PerturbStrategy::kEdge;
  double p = 0.0;
  /// Mean over trials, in kSweepMetrics order.
  std::array<double, 5> mean{};
  /// mean divided by the largest mean of the same metric over the sweep.
  std::array<double, 5> normalized{};
};

/// Perturbs `truth` `trials` times per (strategy, p) cell and averages the
/// five scoring metrics. p == 0 scores the unperturbed cover. Trial seeds
/// are derived from `seed`, the cell and the trial index, so the result does
/// not depend on `jobs`.
std::vector<SweepRow> robustness_sweep(const Graph& g, const Cover& truth,
                                       std::span<const PerturbStrategy> strategies,
                                       std::span<const double> p_grid, std::size_t trials,
                                       std::uint64_t seed, std::size_t jobs = 1);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampledNetwork {
  Subgraph sub;
  Cover cover;
  /// Anchor in original ids.
  NodeId anchor = kInvalidNode;
};

/// Draws an anchor uniformly among nodes with at least two memberships and
/// keeps every node sharing a community with it. Throws
/// std::invalid_argument when no node qualifies.
SampledNetwork sample_subnetwork(const Graph& g, const Cover& truth, std::uint64_t seed);

/// Same, with the anchor fixed. Throws when `anchor` has fewer than two
/// memberships.
SampledNetwork sample_around(const Graph& g, const Cover& truth, NodeId anchor);

// ---------------------------------------------------------------------------
// Distribution analysis
// ---------------------------------------------------------------------------

inline constexpr std::size_t kGenPermBins = 20;

/// Zero-based bin of a GenPerm value: bin b covers [b/10 - 1, b/10 - 0.9),
/// and the last bin is closed at 1.
std::size_t genperm_bin(double value);

struct ProfileBin {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double fraction = 0.0;
  double mean_memberships = 0.0;
  /// Mean I^c, divided by the largest I^c over all (v, c) pairs.
  double mean_internal = 0.0;
  double mean_clustering = 0.0;
  double mean_degree = 0.0;
};

struct BinnedProfile {
  std::array<ProfileBin, kGenPermBins> bins{};
  std::size_t pairs = 0;
};

/// Bins every (vertex, community) pair by P_g^c. Empty bins report zeros.
BinnedProfile binned_profile(const Graph& g, const Cover& cover);

struct FarnessEntry {
  NodeId vertex = kInvalidNode;
  /// Mean BFS distance to the members reachable inside the community.
  double farness = 0.0;
  double genperm = 0.0;
};

struct FarnessProfile {
  std::vector<FarnessEntry> entries;
  /// True when the community induces several components.
  bool disconnected = false;
};

/// Farness of every member of community c in its induced subgraph. A
/// disconnected community throws std::domain_error unless
/// `allow_disconnected`, in which case distances stay inside components.
FarnessProfile farness_profile(const Graph& g, const Cover& cover, CommunityId c,
                               bool allow_disconnected = false);

/// Pearson correlation of `attribute` across both orientations of every
/// listed edge; nullopt without edges or with zero variance.
std::optional<double> edge_assortativity(std::span<const Edge> edges,
                                         std::span<const double> attribute);

/// Assortativity of GenPerm bins over the internal edges of community c.
std::optional<double> genperm_assortativity(const Graph& g, const Cover& cover, CommunityId c);

// ---------------------------------------------------------------------------
// Layered node removal
// ---------------------------------------------------------------------------

using Detector = std::function<Cover(const Graph&, std::uint64_t seed)>;

inline constexpr std::size_t kLayers = 4;
inline constexpr std::array<std::size_t, kLayers> kAllLayers = {1, 2, 3, 4};

/// Layer 1..4 of every member of every community of `cover`, splitting the
/// community's P_g^c range into equal quarters (layer 1 lowest). A community
/// with a zero range puts every member in layer 4.
std::vector<std::vector<std::pair<NodeId, std::size_t>>> community_layers(const Graph& g,
                                                                         const Cover& cover);

struct LayerRow {
  std::size_t layer = 0;
  double x = 0.0;
  double mean_onmi = 0.0;
  double mean_removed = 0.0;
};

/**
 * For every layer and every x in `x_grid` (percent), removes
 * ceil(x / 100 * layer size) random members of that layer from every
 * community of `truth`, plus any node left without neighbors, reruns
 * `detector` and compares its cover with the baseline detection restricted
 * to the surviving nodes. Rows follow `layers` then x. A requested layer
 * that is empty in every community throws std::invalid_argument unless
 * x is 0.
 */
std::vector<LayerRow> layered_removal(const Graph& g, const Cover& truth,
                                      const Detector& detector,
                                      std::span<const double> x_grid, std::size_t trials,
                                      std::uint64_t seed, std::size_t jobs = 1,
                                      std::span<const std::size_t> layers = kAllLayers);

// ---------------------------------------------------------------------------
// Message spreading
// ---------------------------------------------------------------------------

struct SpreadTrace {
  std::vector<NodeId> initiators;
  std::size_t steps = 0;
  /// informed_per_step[0] is the initiator count; the last entry is |V|.
  std::vector<std::size_t> informed_per_step;
};

/// Synchronous push: each round every informed vertex sends to one uniform
/// uninformed neighbor, and all messages land at the end of the round.
/// Throws std::invalid_argument for an empty or out of range initiator set
/// and for a disconnected graph.
SpreadTrace spread(const Graph& g, std::span<const NodeId> initiators, std::uint64_t seed);

/// kGenPermPerCommunity ranks each community's members by P_g^c(v) and
/// takes the best remaining member of every community in turn, largest
/// communities first.
enum class InitiatorPolicy { kRandom, kDegree, kGenPerm, kGenPermPerCommunity };

const char* to_string(InitiatorPolicy p);
InitiatorPolicy parse_initiator_policy(const std::string& name);

/// k initiators: random picks uniformly without replacement; degree and
/// genperm take the top k by degree or by max_c P_g^c(v), breaking ties by
/// higher degree and then lower id. Throws unless 1 <= k <= |V|.
std::vector<NodeId> select_initiators(const Graph& g, const Cover& cover,
                                      InitiatorPolicy policy, std::size_t k,
                                      std::uint64_t seed);

}  // namespace genperm

#endif  // GENPERM_EXPERIMENTS_HPP_
