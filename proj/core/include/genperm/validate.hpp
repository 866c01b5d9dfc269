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

#ifndef GENPERM_VALIDATE_HPP_
#define GENPERM_VALIDATE_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"

namespace genperm {

enum class OmegaVariant {
  /// Ordered pairs including u == v, normalized by |V|^2.
  kOrderedWithSelf,
  /// Unordered pairs u < v, normalized by |V|(|V|-1)/2.
  kUnorderedPairs,
  /// Chance-adjusted index over unordered pairs.
  kAdjusted,
};

/// Agreement on the number of communities each node pair shares. Throws
/// std::invalid_argument when the node counts differ.
double omega_index(const Cover& truth, const Cover& detected,
                   OmegaVariant variant = OmegaVariant::kOrderedWithSelf);

/// Two-sided best-match F-score. Throws std::invalid_argument when either
/// cover has no communities.
double fscore(const Cover& truth, const Cover& detected);

/// Overlapping NMI with max normalization (McDaid, Greene and Hurley),
/// clamped to [0, 1]. Throws std::invalid_argument when node counts
/// differ and std::domain_error when both covers carry zero entropy.
double onmi(const Cover& truth, const Cover& detected);

inline constexpr const char* kOnmiVariant = "max-normalized LFK (McDaid)";

struct ValidationReport {
  double onmi = 0.0;
  double omega = 0.0;
  double fscore = 0.0;
  std::string onmi_variant = kOnmiVariant;
  OmegaVariant omega_variant = OmegaVariant::kOrderedWithSelf;
};

ValidationReport validate(const Cover& truth, const Cover& detected,
                          OmegaVariant omega_variant = OmegaVariant::kOrderedWithSelf);

/// Dense ranks with rank 1 for the largest value; equal values share a
/// rank and the next distinct value takes the next integer.
std::vector<std::size_t> dense_ranks(std::span<const double> values);

/// Pearson correlation of the dense ranks of x and y. Throws
/// std::invalid_argument for unequal or too short inputs and
/// std::domain_error when either rank vector is constant.
double spearman_dense(std::span<const double> x, std::span<const double> y);

struct NamedCover {
  std::string name;
  Cover cover;
};

inline constexpr std::array<const char*, 5> kScoringMetrics = {"P_g", "EQ", "Q_ov", "CC",
                                                               "OC"};
inline constexpr std::array<const char*, 3> kValidationMetrics = {"ONMI", "Omega", "F-Score"};

struct RankCorrelation {
  /// scores[i][m]: scoring metric m of candidate i, in kScoringMetrics order.
  std::vector<std::array<double, 5>> scores;
  /// validation[i][m]: validation metric m of candidate i.
  std::vector<std::array<double, 3>> validation;
  /// rho[s][v]: Spearman correlation; empty when a rank column is constant.
  std::array<std::array<std::optional<double>, 3>, 5> rho{};
};

/// Scores every candidate, ranks each metric column densely and correlates
/// every scoring column with every validation column. Requires at least two
/// candidates. `jobs` bounds concurrent candidate scoring.
RankCorrelation rank_correlation_protocol(const Graph& g, const Cover& truth,
                                          const std::vector<NamedCover>& candidates,
                                          OmegaVariant omega_variant = OmegaVariant::kOrderedWithSelf,
                                          std::size_t jobs = 1);

}  // namespace genperm

#endif  // GENPERM_VALIDATE_HPP_
