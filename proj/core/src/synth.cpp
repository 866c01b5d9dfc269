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

#include "genperm/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "genperm/metrics.hpp"
#include "genperm/random.hpp"

namespace genperm::synth {
namespace {

void add_clique(std::vector<Edge>& edges, std::span<const NodeId> nodes) {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) edges.emplace_back(nodes[i], nodes[j]);
  }
}

std::vector<NodeId> id_range(NodeId first, std::size_t count) {
  std::vector<NodeId> ids(count);
  std::iota(ids.begin(), ids.end(), first);
  return ids;
}

void require_clique_size(std::size_t s, const char* what) {
  if (s < 3) throw std::invalid_argument(std::string(what) + ": clique size must be >= 3");
}

Graph make_graph(const std::vector<Edge>& edges, std::size_t n) {
  return build_graph(std::span<const Edge>(edges), n).graph;
}

std::vector<NodeId> with(std::vector<NodeId> members, NodeId extra) {
  members.push_back(extra);
  return members;
}

std::vector<NodeId> joined(std::vector<NodeId> a, const std::vector<NodeId>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

CliqueChain gen_clique_chain(std::size_t n_x, std::size_t n_y, std::size_t n_z) {
  require_clique_size(n_x, "clique chain");
  require_clique_size(n_y, "clique chain");
  require_clique_size(n_z, "clique chain");
  CliqueChain chain;
  chain.x = id_range(0, n_x);
  chain.y = id_range(static_cast<NodeId>(n_x), n_y);
  chain.z = id_range(static_cast<NodeId>(n_x + n_y), n_z);
  chain.u_x = chain.x[0];
  chain.v_x = chain.y[0];
  chain.v_z = chain.y[1];
  chain.u_z = chain.z[0];
  std::vector<Edge> edges;
  add_clique(edges, chain.x);
  add_clique(edges, chain.y);
  add_clique(edges, chain.z);
  edges.emplace_back(chain.u_x, chain.v_x);
  edges.emplace_back(chain.v_z, chain.u_z);
  const std::size_t n = n_x + n_y + n_z;
  chain.graph = make_graph(edges, n);
  chain.truth = Cover::build(n, {chain.x, chain.y, chain.z});
  return chain;
}

Cover chain_case_cover(const CliqueChain& chain, int case_number) {
  const std::size_t n = chain.graph.node_count();
  switch (case_number) {
    case 1:
      return Cover::build(n, {with(chain.x, chain.v_x), with(chain.y, chain.u_x),
                              with(chain.y, chain.u_z), with(chain.z, chain.v_z)});
    case 2:
      return Cover::build(n, {joined(chain.x, chain.y), joined(chain.y, chain.z)});
    case 3:
      return chain.truth;
    default:
      throw std::invalid_argument("chain case must be 1, 2 or 3");
  }
}

double chain_case_closed_form(int case_number, std::size_t n_x, std::size_t n_y,
                              std::size_t n_z) {
  const double x = static_cast<double>(n_x);
  const double y = static_cast<double>(n_y);
  const double z = static_cast<double>(n_z);
  switch (case_number) {
    case 1:
      return 4.0 - 5.0 / (2.0 * x) - 5.0 / (2.0 * z) - 3.0 / y + 1.0 / (x * x) +
             1.0 / (z * z);
    case 2:
      return 4.0 - 2.0 / x - 2.0 / y - 2.0 / z - 2.0 / (y * y);
    case 3:
      return 4.0 - 1.0 / x - 2.0 / y - 1.0 / z;
    default:
      throw std::invalid_argument("chain case must be 1, 2 or 3");
  }
}

double chain_affected_sum(const CliqueChain& chain, const Cover& cover) {
  double sum = 0.0;
  for (const NodeId v : {chain.u_x, chain.v_x, chain.v_z, chain.u_z}) {
    sum += genperm_vertex(chain.graph, cover, v);
  }
  return sum;
}

CliqueRing gen_clique_ring(std::size_t k, std::size_t s) {
  if (k < 3) throw std::invalid_argument("clique ring: need at least 3 cliques");
  require_clique_size(s, "clique ring");
  CliqueRing ring;
  std::vector<Edge> edges;
  std::vector<std::vector<NodeId>> communities;
  for (std::size_t i = 0; i < k; ++i) {
    auto clique = id_range(static_cast<NodeId>(i * s), s);
    add_clique(edges, clique);
    communities.push_back(std::move(clique));
  }
  for (std::size_t i = 0; i < k; ++i) {
    const auto bridge = static_cast<NodeId>(k * s + i);
    ring.bridges.push_back(bridge);
    edges.emplace_back(static_cast<NodeId>(i * s), bridge);
    edges.emplace_back(static_cast<NodeId>(((i + 1) % k) * s), bridge);
    communities.push_back({bridge});
  }
  const std::size_t n = k * s + k;
  ring.graph = make_graph(edges, n);
  ring.truth = Cover::build(n, std::move(communities));
  return ring;
}

Cover ring_overlapping_bridges_cover(const CliqueRing& ring, std::size_t k, std::size_t s) {
  std::vector<std::vector<NodeId>> communities;
  for (std::size_t i = 0; i < k; ++i) {
    auto clique = id_range(static_cast<NodeId>(i * s), s);
    clique.push_back(ring.bridges[i]);
    clique.push_back(ring.bridges[(i + k - 1) % k]);
    communities.push_back(std::move(clique));
  }
  return Cover::build(ring.graph.node_count(), std::move(communities));
}

CliqueStar gen_clique_star(std::size_t n, const std::vector<std::size_t>& surround_sizes) {
  require_clique_size(n, "clique star");
  if (surround_sizes.size() > n) {
    throw std::invalid_argument("clique star: more surrounding cliques than center cycle edges");
  }
  CliqueStar star;
  star.center = id_range(0, n);
  std::vector<Edge> edges;
  add_clique(edges, star.center);
  std::vector<std::vector<NodeId>> communities{star.center};
  auto next = static_cast<NodeId>(n);
  for (std::size_t j = 0; j < surround_sizes.size(); ++j) {
    require_clique_size(surround_sizes[j], "clique star");
    std::vector<NodeId> clique{static_cast<NodeId>(j), static_cast<NodeId>((j + 1) % n)};
    for (std::size_t t = 2; t < surround_sizes[j]; ++t) clique.push_back(next++);
    add_clique(edges, clique);
    communities.push_back(std::move(clique));
  }
  star.graph = make_graph(edges, next);
  star.truth = Cover::build(next, std::move(communities));
  return star;
}

Cover star_partition_cover(const CliqueStar& star, const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) return Cover::build(star.graph.node_count(), {star.center});
  std::vector<std::vector<NodeId>> parts(sizes.size());
  auto next = static_cast<NodeId>(star.center.size());
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    for (std::size_t t = 2; t < sizes[j]; ++t) parts[j].push_back(next++);
  }
  for (std::size_t i = 0; i < star.center.size(); ++i) {
    parts[std::min(i, sizes.size() - 1)].push_back(star.center[i]);
  }
  return Cover::build(star.graph.node_count(), std::move(parts));
}

LabeledGraph gen_clique_path(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("clique path: no cliques");
  std::vector<Edge> edges;
  std::vector<std::vector<NodeId>> communities;
  NodeId next = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    require_clique_size(sizes[i], "clique path");
    auto clique = id_range(next, sizes[i]);
    add_clique(edges, clique);
    if (i > 0) edges.emplace_back(communities.back().front(), clique.front());
    next += static_cast<NodeId>(sizes[i]);
    communities.push_back(std::move(clique));
  }
  return {make_graph(edges, next), Cover::build(next, std::move(communities))};
}

LabeledGraph generate_cliques(const CliqueSpec& spec) {
  switch (spec.topology) {
    case Topology::kChain: {
      if (spec.sizes.size() != 3) throw std::invalid_argument("chain takes three sizes");
      auto chain = gen_clique_chain(spec.sizes[0], spec.sizes[1], spec.sizes[2]);
      return {std::move(chain.graph), std::move(chain.truth)};
    }
    case Topology::kRing: {
      if (spec.sizes.size() != 2) throw std::invalid_argument("ring takes {count, size}");
      auto ring = gen_clique_ring(spec.sizes[0], spec.sizes[1]);
      return {std::move(ring.graph), std::move(ring.truth)};
    }
    case Topology::kStar: {
      if (spec.sizes.empty()) throw std::invalid_argument("star takes {center, surround...}");
      const std::vector<std::size_t> surround(spec.sizes.begin() + 1, spec.sizes.end());
      auto star = gen_clique_star(spec.sizes[0], surround);
      return {std::move(star.graph), std::move(star.truth)};
    }
    case Topology::kBridgePair:
      return gen_clique_path(spec.sizes);
  }
  throw std::invalid_argument("unknown topology");
}

PlantedGraph gen_planted_overlap(const PlantedSpec& spec) {
  if (spec.blocks.empty()) throw std::invalid_argument("planted: no blocks");
  const auto valid = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!valid(spec.p_in) || !valid(spec.p_out) || !valid(spec.overlap_fraction)) {
    throw std::invalid_argument("planted: probabilities must lie in [0, 1]");
  }
  if (!(spec.p_in > spec.p_out)) throw std::invalid_argument("planted: need p_in > p_out");

  PlantedGraph out;
  const std::size_t n = std::accumulate(spec.blocks.begin(), spec.blocks.end(), std::size_t{0});
  const std::size_t block_count = spec.blocks.size();
  std::vector<std::vector<std::uint32_t>> node_blocks(n);
  std::vector<std::vector<NodeId>> communities(block_count);
  NodeId next = 0;
  for (std::size_t b = 0; b < block_count; ++b) {
    for (std::size_t t = 0; t < spec.blocks[b]; ++t) {
      node_blocks[next].push_back(static_cast<std::uint32_t>(b));
      communities[b].push_back(next++);
    }
  }

  Rng rng(spec.seed);
  if (block_count > 1) {
    auto order = id_range(0, n);
    shuffle(std::span<NodeId>(order), rng);
    const auto overlapping =
        static_cast<std::size_t>(std::floor(spec.overlap_fraction * static_cast<double>(n)));
    for (std::size_t t = 0; t < overlapping && t < n; ++t) {
      const NodeId v = order[t];
      const auto extra = static_cast<std::uint32_t>((node_blocks[v][0] + 1) % block_count);
      node_blocks[v].push_back(extra);
      std::sort(node_blocks[v].begin(), node_blocks[v].end());
      communities[extra].push_back(v);
    }
  }

  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      bool shared = false;
      for (const auto b : node_blocks[u]) {
        if (std::find(node_blocks[v].begin(), node_blocks[v].end(), b) != node_blocks[v].end()) {
          shared = true;
          break;
        }
      }
      if (bernoulli(rng, shared ? spec.p_in : spec.p_out)) edges.emplace_back(u, v);
    }
  }
  out.graph = make_graph(edges, n);
  out.truth = Cover::build(n, std::move(communities));

  const std::size_t smallest = *std::min_element(spec.blocks.begin(), spec.blocks.end());
  if (smallest > 1 &&
      spec.p_in * static_cast<double>(smallest - 1) < std::log(static_cast<double>(smallest))) {
    out.warnings.push_back("p_in is below the connectivity threshold of the smallest block");
  }
  for (NodeId v = 0; v < n; ++v) {
    if (out.graph.degree(v) == 0) {
      out.warnings.push_back("graph contains isolated nodes");
      break;
    }
  }
  if (component_count(connected_components(out.graph)) > 1) {
    out.warnings.push_back("graph is disconnected");
  }
  return out;
}

}  // namespace genperm::synth
