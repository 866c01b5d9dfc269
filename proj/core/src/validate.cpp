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

#include "genperm/validate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "genperm/metrics.hpp"
#include "genperm/parallel.hpp"

namespace genperm {
namespace {

void require_same_universe(const Cover& a, const Cover& b) {
  if (a.node_count() != b.node_count()) {
    throw std::invalid_argument("covers span " + std::to_string(a.node_count()) + " and " +
                                std::to_string(b.node_count()) + " nodes");
  }
}

// Adds 1 to counts[w] for every w sharing a community with u in `cover`,
// recording newly touched ids in `touched`.
void accumulate_shared(const Cover& cover, NodeId u, std::vector<std::uint32_t>& counts,
                       std::vector<NodeId>& touched, std::vector<bool>& seen) {
  for (const CommunityId c : cover.memberships(u)) {
    for (const NodeId w : cover.members(c)) {
      if (!seen[w]) {
        seen[w] = true;
        touched.push_back(w);
      }
      ++counts[w];
    }
  }
}

double plogp(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

// Entropy of the membership indicator of a community with `size` members.
double indicator_entropy(double size, double n) {
  return plogp(size / n) + plogp((n - size) / n);
}

// Sum over communities of X of the smallest admissible H(X_k | Y_l).
double conditional_entropy(const Cover& x, const Cover& y, double& hx_total) {
  const double n = static_cast<double>(x.node_count());
  std::vector<std::uint32_t> overlap(y.community_count(), 0);
  std::vector<CommunityId> touched;
  double conditional = 0.0;
  hx_total = 0.0;
  for (CommunityId k = 0; k < x.community_count(); ++k) {
    const auto xs = x.members(k);
    const double size_x = static_cast<double>(xs.size());
    const double hx = indicator_entropy(size_x, n);
    hx_total += hx;
    for (const NodeId v : xs) {
      for (const CommunityId l : y.memberships(v)) {
        if (overlap[l]++ == 0) touched.push_back(l);
      }
    }
    double best = hx;
    // Disjoint communities of Y can still be admissible, so all of Y is scanned.
    for (CommunityId l = 0; l < y.community_count(); ++l) {
      const double size_y = static_cast<double>(y.members(l).size());
      const double both = overlap[l];
      const double d = both / n;
      const double c = (size_x - both) / n;
      const double b = (size_y - both) / n;
      const double a = (n - size_x - size_y + both) / n;
      const double ha = plogp(a), hb = plogp(b), hc = plogp(c), hd = plogp(d);
      if (ha + hd <= hb + hc) continue;
      const double h = ha + hb + hc + hd - plogp(b + d) - plogp(a + c);
      best = std::min(best, h);
    }
    conditional += std::max(0.0, best);
    for (const CommunityId l : touched) overlap[l] = 0;
    touched.clear();
  }
  return conditional;
}

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Best harmonic-mean match of each community of `from` against `to`,
// averaged over the explicit communities of `from`.
double best_match_average(const Cover& from, const Cover& to) {
  std::vector<std::uint32_t> overlap(to.community_count(), 0);
  std::vector<CommunityId> touched;
  double total = 0.0;
  std::size_t counted = 0;
  for (CommunityId i = 0; i < from.community_count(); ++i) {
    if (from.is_implicit(i)) continue;
    const auto members = from.members(i);
    for (const NodeId v : members) {
      for (const CommunityId j : to.memberships(v)) {
        if (to.is_implicit(j)) continue;
        if (overlap[j]++ == 0) touched.push_back(j);
      }
    }
    double best = 0.0;
    for (const CommunityId j : touched) {
      const double f = 2.0 * overlap[j] /
                       static_cast<double>(members.size() + to.members(j).size());
      best = std::max(best, f);
      overlap[j] = 0;
    }
    touched.clear();
    total += best;
    ++counted;
  }
  return total / static_cast<double>(counted);
}

bool has_explicit(const Cover& cover) {
  for (CommunityId c = 0; c < cover.community_count(); ++c) {
    if (!cover.is_implicit(c)) return true;
  }
  return false;
}

}  // namespace

double omega_index(const Cover& truth, const Cover& detected, OmegaVariant variant) {
  require_same_universe(truth, detected);
  const std::size_t n = truth.node_count();
  if (n == 0) throw std::invalid_argument("omega: empty node universe");

  std::vector<std::uint32_t> tc(n, 0), dc(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<NodeId> touched;
  // Histograms over unordered pairs u < v of the shared-community counts,
  // restricted to pairs that co-occur somewhere; the rest share zero.
  std::vector<std::uint64_t> truth_hist, detected_hist;
  std::uint64_t ordered_disagree = 0;
  std::uint64_t unordered_disagree = 0;
  std::uint64_t co_pairs_truth = 0, co_pairs_detected = 0;

  for (NodeId u = 0; u < n; ++u) {
    accumulate_shared(truth, u, tc, touched, seen);
    accumulate_shared(detected, u, dc, touched, seen);
    for (const NodeId v : touched) {
      if (tc[v] != dc[v]) {
        ++ordered_disagree;
        if (v > u) ++unordered_disagree;
      }
      if (v > u) {
        if (tc[v] > 0) {
          if (truth_hist.size() <= tc[v]) truth_hist.resize(tc[v] + 1, 0);
          ++truth_hist[tc[v]];
          ++co_pairs_truth;
        }
        if (dc[v] > 0) {
          if (detected_hist.size() <= dc[v]) detected_hist.resize(dc[v] + 1, 0);
          ++detected_hist[dc[v]];
          ++co_pairs_detected;
        }
      }
      tc[v] = dc[v] = 0;
      seen[v] = false;
    }
    touched.clear();
  }

  const double nn = static_cast<double>(n);
  if (variant == OmegaVariant::kOrderedWithSelf) {
    return 1.0 - static_cast<double>(ordered_disagree) / (nn * nn);
  }
  const double pairs = nn * (nn - 1.0) / 2.0;
  if (pairs == 0.0) return 1.0;
  const double observed = 1.0 - static_cast<double>(unordered_disagree) / pairs;
  if (variant == OmegaVariant::kUnorderedPairs) return observed;

  const std::size_t top = std::max(truth_hist.size(), detected_hist.size());
  truth_hist.resize(std::max<std::size_t>(top, 1), 0);
  detected_hist.resize(std::max<std::size_t>(top, 1), 0);
  truth_hist[0] = static_cast<std::uint64_t>(pairs) - co_pairs_truth;
  detected_hist[0] = static_cast<std::uint64_t>(pairs) - co_pairs_detected;
  double expected = 0.0;
  for (std::size_t j = 0; j < truth_hist.size(); ++j) {
    expected += static_cast<double>(truth_hist[j]) * static_cast<double>(detected_hist[j]);
  }
  expected /= pairs * pairs;
  if (expected >= 1.0) return observed >= 1.0 ? 1.0 : 0.0;
  return (observed - expected) / (1.0 - expected);
}

double fscore(const Cover& truth, const Cover& detected) {
  require_same_universe(truth, detected);
  if (!has_explicit(truth) || !has_explicit(detected)) {
    throw std::invalid_argument("fscore: empty cover");
  }
  return 0.5 * (best_match_average(truth, detected) + best_match_average(detected, truth));
}

double onmi(const Cover& truth, const Cover& detected) {
  require_same_universe(truth, detected);
  if (truth.node_count() == 0) throw std::invalid_argument("onmi: empty node universe");
  double hx = 0.0, hy = 0.0;
  const double hx_given_y = conditional_entropy(truth, detected, hx);
  const double hy_given_x = conditional_entropy(detected, truth, hy);
  const double norm = std::max(hx, hy);
  if (norm <= 0.0) {
    throw std::domain_error("onmi: both covers carry zero entropy");
  }
  const double mutual = 0.5 * (hx - hx_given_y + hy - hy_given_x);
  return std::clamp(mutual / norm, 0.0, 1.0);
}

ValidationReport validate(const Cover& truth, const Cover& detected,
                          OmegaVariant omega_variant) {
  ValidationReport report;
  report.onmi = onmi(truth, detected);
  report.omega = omega_index(truth, detected, omega_variant);
  report.fscore = fscore(truth, detected);
  report.omega_variant = omega_variant;
  return report;
}

std::vector<std::size_t> dense_ranks(std::span<const double> values) {
  std::vector<double> distinct(values.begin(), values.end());
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::size_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), values[i],
                                     std::greater<>());
    ranks[i] = static_cast<std::size_t>(it - distinct.begin()) + 1;
  }
  return ranks;
}

double spearman_dense(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  if (x.size() < 2) throw std::invalid_argument("spearman: need at least two values");
  for (const double v : x) {
    if (std::isnan(v)) throw std::invalid_argument("spearman: NaN input");
  }
  for (const double v : y) {
    if (std::isnan(v)) throw std::invalid_argument("spearman: NaN input");
  }
  const auto rx = dense_ranks(x);
  const auto ry = dense_ranks(y);
  std::vector<double> fx(rx.begin(), rx.end()), fy(ry.begin(), ry.end());
  const double mx = mean(fx), my = mean(fy);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < fx.size(); ++i) {
    sxy += (fx[i] - mx) * (fy[i] - my);
    sxx += (fx[i] - mx) * (fx[i] - mx);
    syy += (fy[i] - my) * (fy[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) throw std::domain_error("spearman: zero rank variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RankCorrelation rank_correlation_protocol(const Graph& g, const Cover& truth,
                                          const std::vector<NamedCover>& candidates,
                                          OmegaVariant omega_variant, std::size_t jobs) {
  if (candidates.size() < 2) {
    throw std::invalid_argument("rank correlation needs at least two candidates");
  }
  RankCorrelation out;
  out.scores.resize(candidates.size());
  out.validation.resize(candidates.size());
  parallel_for(candidates.size(), jobs, [&](std::size_t i) {
    const ScoreSet s = score_all(g, candidates[i].cover);
    out.scores[i] = {s.genperm, s.eq, s.qov, s.cc, s.oc};
    const ValidationReport r = validate(truth, candidates[i].cover, omega_variant);
    out.validation[i] = {r.onmi, r.omega, r.fscore};
  });
  std::vector<double> sx(candidates.size()), vy(candidates.size());
  for (std::size_t s = 0; s < kScoringMetrics.size(); ++s) {
    for (std::size_t i = 0; i < candidates.size(); ++i) sx[i] = out.scores[i][s];
    for (std::size_t v = 0; v < kValidationMetrics.size(); ++v) {
      for (std::size_t i = 0; i < candidates.size(); ++i) vy[i] = out.validation[i][v];
      try {
        out.rho[s][v] = spearman_dense(sx, vy);
      } catch (const std::domain_error&) {
        out.rho[s][v] = std::nullopt;
      }
    }
  }
  return out;
}

}  // namespace genperm
