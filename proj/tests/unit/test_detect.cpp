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

#include <gtest/gtest.h>

#include <random>

#include "genperm/detect.hpp"
#include "genperm/metrics.hpp"
#include "genperm/synth.hpp"
#include "helpers.hpp"

namespace genperm {
namespace {

using testing::make_cover;
using testing::make_graph;

void expect_consistent(const Graph& g, const DetectionResult& r, const DetectConfig& cfg) {
  ASSERT_FALSE(r.objective_history.empty());
  EXPECT_LE(r.iterations_used, cfg.max_iter);
  EXPECT_EQ(r.objective_history.size(), r.iterations_used);
  EXPECT_DOUBLE_EQ(r.objective_history.back(), genperm_network(g, r.cover));
  ASSERT_EQ(r.per_vertex_genperm.size(), g.node_count());
  const auto expected = genperm_per_vertex(g, r.cover);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    EXPECT_DOUBLE_EQ(r.per_vertex_genperm[v], expected[v]);
    EXPECT_GE(r.cover.memberships(v).size(), 1u);
  }
}

TEST(MaxGenPerm, TwoK4Bridge) {
  const auto path = synth::gen_clique_path({4, 4});
  const DetectConfig cfg;
  const auto r = max_genperm(path.graph, cfg);
  EXPECT_EQ(r.cover, path.truth);
  expect_consistent(path.graph, r, cfg);
  EXPECT_TRUE(r.converged);
}

TEST(MaxGenPerm, TwoK4BridgeIsPartitionOptimum) {
  const auto path = synth::gen_clique_path({4, 4});
  const double best = genperm_network(path.graph, path.truth);
  std::vector<NodeId> label(8, 0);
  for (int code = 0; code < 6561; ++code) {
    int rest = code;
    std::vector<std::vector<NodeId>> cs(3);
    for (NodeId v = 0; v < 8; ++v) {
      cs[rest % 3].push_back(v);
      rest /= 3;
    }
    EXPECT_LE(genperm_network(path.graph, build_cover(path.graph, cs)), best + 1e-12);
  }
}

TEST(MaxGenPerm, RingOfCliques) {
  const auto ring = synth::gen_clique_ring(5, 5);
  const DetectConfig cfg;
  const auto r = max_genperm(ring.graph, cfg);
  EXPECT_EQ(r.cover, ring.truth);
  expect_consistent(ring.graph, r, cfg);
}

TEST(MaxGenPerm, BeatsAllInOneOnCliqueGraphs) {
  std::vector<synth::LabeledGraph> graphs;
  graphs.push_back(synth::gen_clique_path({3, 5, 4}));
  {
    auto ring = synth::gen_clique_ring(4, 4);
    graphs.push_back({ring.graph, ring.truth});
  }
  {
    auto chain = synth::gen_clique_chain(3, 6, 5);
    graphs.push_back({chain.graph, chain.truth});
  }
  for (const auto& lg : graphs) {
    const auto r = max_genperm(lg.graph);
    std::vector<NodeId> all(lg.graph.node_count());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_GE(genperm_network(lg.graph, r.cover),
              genperm_network(lg.graph, build_cover(lg.graph, {all})));
  }
}

TEST(MaxGenPerm, DeterministicOrderings) {
  synth::PlantedSpec spec;
  spec.blocks = {10, 10, 10};
  spec.p_in = 0.8;
  spec.p_out = 0.03;
  spec.overlap_fraction = 0.1;
  spec.seed = 4;
  const auto planted = synth::gen_planted_overlap(spec);
  DetectConfig cfg;
  cfg.per_component = true;
  const auto a = max_genperm(planted.graph, cfg);
  const auto b = max_genperm(planted.graph, cfg);
  EXPECT_EQ(a.cover, b.cover);
  EXPECT_EQ(a.objective_history, b.objective_history);
  cfg.ordering = VertexOrder::kShuffle;
  cfg.seed = 12;
  const auto c = max_genperm(planted.graph, cfg);
  const auto d = max_genperm(planted.graph, cfg);
  EXPECT_EQ(c.cover, d.cover);
  EXPECT_EQ(c.objective_history, d.objective_history);
}

TEST(MaxGenPerm, NoMergeLeavesTies) {
  const auto path = synth::gen_clique_path({4, 4});
  DetectConfig cfg;
  cfg.merge_ties = false;
  const auto r = max_genperm(path.graph, cfg);
  EXPECT_EQ(r.merges, 0u);
  expect_consistent(path.graph, r, cfg);
  // Without consolidation the tie between a clique and a fan of triangles
  // is left as found, but the objective is the same.
  EXPECT_NEAR(r.objective_history.back(), genperm_network(path.graph, path.truth), 1e-12);
}

TEST(MaxGenPerm, CliqueStarRecoversFiveCliques) {
  const auto star = synth::gen_clique_star(4, {4, 4, 4, 4});
  const DetectConfig cfg;
  const auto r = max_genperm(star.graph, cfg);
  EXPECT_EQ(r.cover, star.truth);
  EXPECT_GT(r.pruned, 0u);
  for (const NodeId v : star.center) EXPECT_EQ(r.cover.memberships(v).size(), 3u);
  expect_consistent(star.graph, r, cfg);
}

TEST(MaxGenPerm, PruningLiftsSaturatedTrap) {
  // Without pruning the corner-sharing vertices stay in overlapping
  // center-plus-petal communities and the sweep stalls below the truth.
  const auto star = synth::gen_clique_star(4, {4, 4, 4, 4});
  DetectConfig cfg;
  cfg.prune_memberships = false;
  const auto stalled = max_genperm(star.graph, cfg);
  EXPECT_EQ(stalled.pruned, 0u);
  EXPECT_LT(stalled.objective_history.back(), 1.0 - 1e-6);
  EXPECT_NEAR(max_genperm(star.graph).objective_history.back(), 1.0, 1e-12);
}

TEST(MaxGenPerm, PruningNeverLowersObjectiveOnFuzzedGraphs) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph g = testing::random_graph(rng, 12 + trial % 10, 0.3);
    if (component_count(connected_components(g)) != 1) continue;
    DetectConfig off;
    off.prune_memberships = false;
    off.merge_ties = false;
    DetectConfig on = off;
    on.prune_memberships = true;
    const auto a = max_genperm(g, off);
    const auto b = max_genperm(g, on);
    EXPECT_GE(b.objective_history.back(), a.objective_history.back() - 1e-9) << trial;
    expect_consistent(g, b, on);
  }
}

TEST(MaxGenPerm, Errors) {
  const Graph two = make_graph({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_THROW(max_genperm(two), std::invalid_argument);
  DetectConfig cfg;
  cfg.max_iter = 0;
  EXPECT_THROW(max_genperm(make_graph({{0, 1}, {1, 2}, {0, 2}}), cfg), std::invalid_argument);
  EXPECT_THROW(max_genperm(make_graph({{0, 1}, {1, 2}, {0, 2}}, 4)), std::domain_error);
  EXPECT_THROW(max_genperm(Graph{}), std::invalid_argument);
}

TEST(MaxGenPerm, PerComponent) {
  const Graph two = make_graph({{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {3, 6}, {4, 6},
                                {5, 6}});
  DetectConfig cfg;
  cfg.per_component = true;
  const auto r = max_genperm(two, cfg);
  EXPECT_EQ(r.cover, make_cover(7, {{0, 1, 2}, {3, 4, 5, 6}}));
  expect_consistent(two, r, cfg);
}

TEST(MaxGenPerm, IterationCap) {
  std::mt19937_64 rng(8);
  const Graph g = testing::random_graph(rng, 30, 0.2);
  if (component_count(connected_components(g)) != 1) GTEST_SKIP();
  DetectConfig cfg;
  cfg.max_iter = 1;
  const auto r = max_genperm(g, cfg);
  EXPECT_EQ(r.iterations_used, 1u);
  expect_consistent(g, r, cfg);
}

TEST(ConstantCommunities, IdenticalPartitions) {
  const Cover c = make_cover(6, {{0, 1, 2}, {3, 4}, {5}});
  const auto cc = constant_communities({c, c, c});
  EXPECT_EQ(cc.groups, (std::vector<std::vector<NodeId>>{{0, 1, 2}, {3, 4}, {5}}));
  EXPECT_DOUBLE_EQ(cc.phi, 3.0 / 6.0);
}

TEST(ConstantCommunities, NeverCoPlaced) {
  const Cover a = make_cover(4, {{0, 1}, {2, 3}});
  const Cover b = make_cover(4, {{0, 2}, {1, 3}});
  const auto cc = constant_communities({a, b});
  EXPECT_DOUBLE_EQ(cc.phi, 1.0);
}

TEST(ConstantCommunities, OneStablePair) {
  const Cover a = make_cover(6, {{0, 1, 2}, {3, 4, 5}});
  const Cover b = make_cover(6, {{0, 1}, {2, 3}, {4, 5}});
  const Cover c = make_cover(6, {{0, 1, 3}, {2, 4}, {5}});
  const auto cc = constant_communities({a, b, c});
  EXPECT_EQ(cc.groups, (std::vector<std::vector<NodeId>>{{0, 1}, {2}, {3}, {4}, {5}}));
  EXPECT_DOUBLE_EQ(cc.phi, 5.0 / 6.0);
}

TEST(ConstantCommunities, Errors) {
  const Cover a = make_cover(3, {{0, 1, 2}});
  EXPECT_THROW(constant_communities({a}), std::invalid_argument);
  EXPECT_THROW(constant_communities({a, make_cover(4, {{0, 1, 2, 3}})}), std::invalid_argument);
}

}  // namespace
}  // namespace genperm
