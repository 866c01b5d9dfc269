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

#ifndef GENPERM_SYNTH_HPP_
#define GENPERM_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"

namespace genperm::synth {

struct LabeledGraph {
  Graph graph;
  Cover truth;
};

/**
 * Three cliques X, Y, Z with X-Y joined by (u_x, v_x) and Y-Z by
 * (u_z, v_z); X and Z are not connected. Ids are laid out X, Y, Z in
 * order. u_x, v_x and u_z are the lowest ids of their cliques, v_z is the
 * second-lowest id of Y. The truth cover is {X, Y, Z}.
 */
struct CliqueChain {
  Graph graph;
  Cover truth;
  std::vector<NodeId> x, y, z;
  NodeId u_x = 0, v_x = 0, u_z = 0, v_z = 0;
};

CliqueChain gen_clique_chain(std::size_t n_x, std::size_t n_y, std::size_t n_z);

/// The competing assignments of the chain:
///   1: X∪{v_x}, Y∪{u_x}, Y∪{u_z}, Z∪{v_z} (partial overlaps)
///   2: X∪Y, Y∪Z (complete overlaps)
///   3: X, Y, Z (separate)
Cover chain_case_cover(const CliqueChain& chain, int case_number);

/// Closed-form sum of P_g over u_x, v_x, v_z, u_z for a case.
double chain_case_closed_form(int case_number, std::size_t n_x, std::size_t n_y,
                              std::size_t n_z);

/// P_g(u_x) + P_g(v_x) + P_g(v_z) + P_g(u_z) evaluated on a cover.
double chain_affected_sum(const CliqueChain& chain, const Cover& cover);

/**
 * k cliques of size s on a ring; bridge vertex i is adjacent to the
 * lowest-id vertex of clique i and of clique (i+1) mod k. Cliques occupy
 * ids [i*s, (i+1)*s), bridges follow. Truth: the cliques plus one
 * singleton per bridge.
 */
struct CliqueRing {
  Graph graph;
  Cover truth;
  std::vector<NodeId> bridges;
};

CliqueRing gen_clique_ring(std::size_t k, std::size_t s);

/// Every bridge joins both neighboring clique communities.
Cover ring_overlapping_bridges_cover(const CliqueRing& ring, std::size_t k, std::size_t s);

/**
 * Central clique K_n (ids 0..n-1) and one surrounding clique per entry of
 * surround_sizes. Surrounding clique j contains the center edge
 * (j, (j+1) mod n) of the center's canonical Hamiltonian cycle plus
 * surround_sizes[j] - 2 private nodes. Truth: center and every
 * surrounding clique as communities; center vertices overlap.
 */
struct CliqueStar {
  Graph graph;
  Cover truth;
  std::vector<NodeId> center;
};

CliqueStar gen_clique_star(std::size_t n, const std::vector<std::size_t>& surround_sizes);

/// Non-overlapping alternative: community j holds surrounding clique j's
/// private nodes plus center vertex j; spare center vertices join the last.
Cover star_partition_cover(const CliqueStar& star, const std::vector<std::size_t>& sizes);

/// Cliques joined in a path by single edges between the lowest-id vertex
/// of each clique and that of the next. Truth: the cliques.
LabeledGraph gen_clique_path(const std::vector<std::size_t>& sizes);

enum class Topology { kChain, kRing, kStar, kBridgePair };

struct CliqueSpec {
  std::vector<std::size_t> sizes;
  Topology topology = Topology::kBridgePair;
  std::uint64_t seed = 0;  // unused by the deterministic topologies
};

/// Dispatches a CliqueSpec: chain takes 3 sizes, ring takes {k, s}, star
/// takes {n, surround...}, bridge-pair takes any list of sizes.
LabeledGraph generate_cliques(const CliqueSpec& spec);

struct PlantedSpec {
  std::vector<std::size_t> blocks;
  double overlap_fraction = 0.0;
  double p_in = 0.3;
  double p_out = 0.01;
  std::uint64_t seed = 0;
};

struct PlantedGraph {
  Graph graph;
  Cover truth;
  std::vector<std::string> warnings;
};

/**
 * Planted block communities. Block b occupies a contiguous id range;
 * floor(overlap_fraction * n) nodes drawn uniformly also join block
 * (b + 1) mod B. Each node pair is linked with p_in when the two share a
 * block and p_out otherwise.
 */
PlantedGraph gen_planted_overlap(const PlantedSpec& spec);

}  // namespace genperm::synth

#endif  // GENPERM_SYNTH_HPP_
