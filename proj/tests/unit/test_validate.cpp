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

#include <numeric>
#include <random>

#include "genperm/synth.hpp"
#include "genperm/metrics.hpp"
#include "genperm/validate.hpp"
#include "helpers.hpp"

namespace genperm {
namespace {

using testing::make_cover;

TEST(Omega, IdenticalIsOne) {
  const Cover c = make_cover(6, {{0, 1, 2}, {2, 3, 4}, {5}});
  EXPECT_EQ(omega_index(c, c), 1.0);
  EXPECT_EQ(omega_index(c, c, OmegaVariant::kUnorderedPairs), 1.0);
  EXPECT_EQ(omega_index(c, c, OmegaVariant::kAdjusted), 1.0);
}

TEST(Omega, TwoNodeOrderedPairs) {
  const Cover truth = make_cover(2, {{0, 1}});
  const Cover detected = make_cover(2, {{0}, {1}});
  EXPECT_DOUBLE_EQ(omega_index(truth, detected), 0.5);
  EXPECT_DOUBLE_EQ(omega_index(truth, detected, OmegaVariant::kUnorderedPairs), 0.0);
}

TEST(Omega, MismatchThrows) {
  EXPECT_THROW(omega_index(make_cover(2, {{0, 1}}), make_cover(3, {{0, 1, 2}})),
               std::invalid_argument);
}

TEST(Omega, MatchesOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 20;
    const Cover a = testing::random_cover(rng, n, 1 + trial % 4, 0.3);
    const Cover b = testing::random_cover(rng, n, 1 + (trial + 1) % 5, 0.3);
    EXPECT_NEAR(omega_index(a, b),
                oracle::omega(n, testing::to_oracle(a), testing::to_oracle(b)), 1e-12);
    EXPECT_DOUBLE_EQ(omega_index(a, b), omega_index(b, a));
  }
}

TEST(Omega, AdjustedIsChanceCorrected) {
  // Every unordered pair agrees on zero except one, so the index sits
  // strictly between the observed agreement and zero.
  const Cover a = make_cover(4, {{0, 1}, {2}, {3}});
  const Cover b = make_cover(4, {{0}, {1}, {2, 3}});
  const double adjusted = omega_index(a, b, OmegaVariant::kAdjusted);
  const double observed = omega_index(a, b, OmegaVariant::kUnorderedPairs);
  EXPECT_LT(adjusted, observed);
  EXPECT_DOUBLE_EQ(observed, 4.0 / 6.0);
  // Expected agreement: (5*5 + 1*1) / 36.
  EXPECT_NEAR(adjusted, (4.0 / 6.0 - 26.0 / 36.0) / (1.0 - 26.0 / 36.0), 1e-12);
}

TEST(FScore, Examples) {
  const Cover c = make_cover(5, {{0, 1, 2}, {3, 4}});
  EXPECT_EQ(fscore(c, c), 1.0);
  EXPECT_NEAR(fscore(make_cover(4, {{0, 1, 2, 3}}), make_cover(4, {{0, 1}})), 2.0 / 3.0,
              1e-12);
  EXPECT_EQ(fscore(make_cover(4, {{0, 1}}), make_cover(4, {{2, 3}})), 0.0);
}

TEST(FScore, EmptyCoverThrows) {
  EXPECT_THROW(fscore(make_cover(3, {}), make_cover(3, {{0, 1, 2}})), std::invalid_argument);
}

TEST(FScore, MatchesOracleAndSymmetric) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 25;
    const Cover a = testing::random_cover(rng, n, 1 + trial % 5, 0.3);
    const Cover b = testing::random_cover(rng, n, 1 + (trial + 2) % 5, 0.3);
    EXPECT_NEAR(fscore(a, b), oracle::fscore(testing::to_oracle(a), testing::to_oracle(b)),
                1e-12);
    EXPECT_NEAR(fscore(a, b), fscore(b, a), 1e-15);
  }
}

TEST(Onmi, Identities) {
  const Cover c = make_cover(8, {{0, 1, 2, 3}, {3, 4, 5}, {6, 7}});
  EXPECT_EQ(onmi(c, c), 1.0);
  const Cover split = make_cover(6, {{0, 1, 2}, {3, 4, 5}});
  const Cover all = make_cover(6, {{0, 1, 2, 3, 4, 5}});
  EXPECT_EQ(onmi(split, all), 0.0);
  EXPECT_EQ(onmi(make_cover(5, {{0, 1, 2}, {3, 4}}), make_cover(5, {{0, 1, 2, 3, 4}})), 0.0);
}

TEST(Onmi, DegenerateThrows) {
  const Cover all = make_cover(4, {{0, 1, 2, 3}});
  EXPECT_THROW(onmi(all, all), std::domain_error);
}

TEST(Onmi, SixteenNodeOverlap) {
  const Cover a = make_cover(16, {{0, 1, 2, 3, 4, 5, 6}, {5, 6, 7, 8, 9, 10}, {11, 12, 13, 14, 15}});
  const Cover b = make_cover(16, {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9, 10, 11}, {11, 12, 13, 14, 15}});
  EXPECT_NEAR(onmi(a, b), oracle::onmi(16, testing::to_oracle(a), testing::to_oracle(b)), 1e-9);
  EXPECT_GT(onmi(a, b), 0.0);
  EXPECT_LT(onmi(a, b), 1.0);
}

TEST(Onmi, MatchesOracleAndSymmetric) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 4 + trial % 25;
    const Cover a = testing::random_cover(rng, n, 2 + trial % 4, 0.25);
    const Cover b = testing::random_cover(rng, n, 2 + (trial + 1) % 4, 0.25);
    const double v = onmi(a, b);
    EXPECT_NEAR(v, oracle::onmi(n, testing::to_oracle(a), testing::to_oracle(b)), 1e-9);
    EXPECT_NEAR(v, onmi(b, a), 1e-12);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Validate, ReportCarriesVariant) {
  const Cover c = make_cover(4, {{0, 1}, {2, 3}});
  const ValidationReport r = validate(c, c);
  EXPECT_EQ(r.onmi, 1.0);
  EXPECT_EQ(r.omega, 1.0);
  EXPECT_EQ(r.fscore, 1.0);
  EXPECT_EQ(r.onmi_variant, kOnmiVariant);
}

TEST(DenseRanks, TableOneColumn) {
  const std::vector<double> v = {0.63, 0.53, 0.60, 0.56, 0.41, 0.60};
  EXPECT_EQ(dense_ranks(v), (std::vector<std::size_t>{1, 4, 2, 3, 5, 2}));
}

TEST(Spearman, Basics) {
  const std::vector<double> x = {1, 2, 3, 4, 5};
  const std::vector<double> rev = {5, 4, 3, 2, 1};
  EXPECT_DOUBLE_EQ(spearman_dense(x, x), 1.0);
  EXPECT_DOUBLE_EQ(spearman_dense(x, rev), -1.0);
  const std::vector<double> flat = {2, 2, 2, 2, 2};
  EXPECT_THROW(spearman_dense(x, flat), std::domain_error);
  EXPECT_THROW(spearman_dense(std::vector<double>{1}, std::vector<double>{1}),
               std::invalid_argument);
  EXPECT_THROW(spearman_dense(x, std::vector<double>{1, 2}), std::invalid_argument);
}

TEST(Spearman, MonotoneInvariance) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> x(12), y(12), fx(12), fy(12);
    for (int i = 0; i < 12; ++i) {
      x[i] = std::round(u(rng) * 3) / 3;
      y[i] = u(rng);
      fx[i] = std::exp(x[i]);
      fy[i] = 3 * y[i] * y[i] * y[i] - 1;
    }
    EXPECT_NEAR(spearman_dense(x, y), spearman_dense(fx, fy), 1e-12);
  }
}

TEST(RankCorrelation, SingleCandidateThrows) {
  const auto path = synth::gen_clique_path({4, 4});
  EXPECT_THROW(rank_correlation_protocol(path.graph, path.truth, {{"a", path.truth}}),
               std::invalid_argument);
}

TEST(RankCorrelation, Compositional) {
  synth::PlantedSpec spec;
  spec.blocks = {10, 10};
  spec.overlap_fraction = 0.1;
  spec.p_in = 0.7;
  spec.p_out = 0.05;
  spec.seed = 3;
  const auto planted = synth::gen_planted_overlap(spec);
  const std::size_t n = planted.graph.node_count();
  std::vector<NodeId> all(n);
  std::iota(all.begin(), all.end(), 0);
  std::vector<std::vector<NodeId>> halves(2);
  for (NodeId v = 0; v < n; ++v) halves[v % 2].push_back(v);
  const std::vector<NamedCover> candidates = {
      {"truth", planted.truth},
      {"all", Cover::build(n, {all})},
      {"alternating", Cover::build(n, halves)},
  };
  const RankCorrelation rc = rank_correlation_protocol(planted.graph, planted.truth, candidates);
  ASSERT_EQ(rc.scores.size(), 3u);
  std::array<std::vector<double>, 5> score_cols;
  std::array<std::vector<double>, 3> valid_cols;
  for (const auto& cand : candidates) {
    const ScoreSet s = score_all(planted.graph, cand.cover);
    const ValidationReport r = validate(planted.truth, cand.cover);
    const std::array<double, 5> sv = {s.genperm, s.eq, s.qov, s.cc, s.oc};
    const std::array<double, 3> vv = {r.onmi, r.omega, r.fscore};
    for (int m = 0; m < 5; ++m) score_cols[m].push_back(sv[m]);
    for (int m = 0; m < 3; ++m) valid_cols[m].push_back(vv[m]);
  }
  for (int s = 0; s < 5; ++s) {
    for (int v = 0; v < 3; ++v) {
      std::optional<double> expected;
      try {
        expected = spearman_dense(score_cols[s], valid_cols[v]);
      } catch (const std::domain_error&) {
      }
      ASSERT_EQ(rc.rho[s][v].has_value(), expected.has_value());
      if (expected) {
        EXPECT_DOUBLE_EQ(*rc.rho[s][v], *expected);
      }
    }
  }
  const RankCorrelation parallel =
      rank_correlation_protocol(planted.graph, planted.truth, candidates,
                                OmegaVariant::kOrderedWithSelf, 3);
  EXPECT_EQ(parallel.rho, rc.rho);
}

TEST(RankCorrelation, DominantCandidateGivesOnes) {
  const auto path = synth::gen_clique_path({5, 5});
  const std::size_t n = path.graph.node_count();
  // Progressively worse covers: truth, then a shifted split, then singletons.
  std::vector<std::vector<NodeId>> shifted = {{0, 1, 2, 3, 4, 5}, {6, 7, 8, 9}};
  std::vector<std::vector<NodeId>> singles;
  for (NodeId v = 0; v < n; ++v) singles.push_back({v});
  const std::vector<NamedCover> candidates = {
      {"truth", path.truth},
      {"shifted", Cover::build(n, shifted)},
      {"singletons", Cover::build(n, singles)},
  };
  const RankCorrelation rc = rank_correlation_protocol(path.graph, path.truth, candidates);
  ASSERT_TRUE(rc.rho[0][0].has_value());
  EXPECT_DOUBLE_EQ(*rc.rho[0][0], 1.0);
  EXPECT_DOUBLE_EQ(*rc.rho[0][1], 1.0);
  EXPECT_DOUBLE_EQ(*rc.rho[0][2], 1.0);
}

}  // namespace
}  // namespace genperm
