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

#include "genperm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "genperm/parallel.hpp"
#include "genperm/random.hpp"
#include "genperm/validate.hpp"

namespace genperm {
namespace {

// Products like 0.29 * 100 land just under the integer in binary; the
// epsilon keeps floor and ceil on the intended side.
constexpr double kCountEps = 1e-9;

std::size_t floor_count(double p, std::size_t n) {
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + kCountEps));
}

std::size_t ceil_count(double p, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(p * static_cast<double>(n) - kCountEps));
}

using Lists = std::vector<std::vector<CommunityId>>;

bool lists_disjoint(const std::vector<CommunityId>& a, const std::vector<CommunityId>& b) {
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return false;
    }
  }
  return true;
}

Cover cover_from_lists(const Lists& lists, std::size_t community_count) {
  std::vector<std::vector<NodeId>> communities(community_count);
  for (NodeId v = 0; v < lists.size(); ++v) {
    for (const CommunityId c : lists[v]) communities[c].push_back(v);
  }
  return Cover::build(lists.size(), std::move(communities));
}

void perturb_edges(const Graph& g, Lists& lists, std::size_t target, Rng& rng) {
  const auto edges = g.edges();
  const bool any = std::any_of(edges.begin(), edges.end(), [&](const Edge& e) {
    return lists_disjoint(lists[e.first], lists[e.second]);
  });
  if (!any) throw std::runtime_error("perturb: no inter-community edge");
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < target; ++attempt) {
    if (attempt >= 100 * target) {
      throw std::runtime_error("perturb: ran out of inter-community edges");
    }
    const auto [u, v] = edges[uniform_index(rng, edges.size())];
    if (!lists_disjoint(lists[u], lists[v])) continue;
    std::swap(lists[u], lists[v]);
    ++done;
  }
}

void perturb_random(Lists& lists, std::size_t target, Rng& rng) {
  const std::size_t n = lists.size();
  if (n < 2) throw std::runtime_error("perturb: fewer than two nodes");
  std::size_t done = 0;
  for (std::size_t attempt = 0; done < target; ++attempt) {
    if (attempt >= 100 * target) {
      throw std::runtime_error("perturb: no node pair with different memberships");
    }
    const auto u = static_cast<NodeId>(uniform_index(rng, n));
    const auto v = static_cast<NodeId>(uniform_index(rng, n));
    if (u == v || lists[u] == lists[v]) continue;
    std::swap(lists[u], lists[v]);
    ++done;
  }
}

// Moves k uniformly chosen entries of `pool` to its front.
void partial_shuffle(std::vector<NodeId>& pool, std::size_t k, Rng& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
}

void perturb_communities(Lists& lists, std::size_t community_count, double p, Rng& rng) {
  std::vector<NodeId> inside, outside;
  for (CommunityId c = 0; c < community_count; ++c) {
    inside.clear();
    outside.clear();
    for (NodeId v = 0; v < lists.size(); ++v) {
      (std::binary_search(lists[v].begin(), lists[v].end(), c) ? inside : outside).push_back(v);
    }
    const std::size_t k = floor_count(p, inside.size());
    if (k == 0) continue;
    if (outside.size() < k) {
      throw std::runtime_error("perturb: community " + std::to_string(c) +
                               " has too few non-members to swap with");
    }
    partial_shuffle(inside, k, rng);
    partial_shuffle(outside, k, rng);
    for (std::size_t i = 0; i < k; ++i) std::swap(lists[inside[i]], lists[outside[i]]);
  }
}

}  // namespace

const char* to_string(PerturbStrategy s) {
  switch (s) {
    case PerturbStrategy::kEdge:
      return "edge";
    case PerturbStrategy::kRandom:
      return "random";
    case PerturbStrategy::kCommunity:
      return "community";
  }
  return "?";
}

PerturbStrategy parse_perturb_strategy(const std::string& name) {
  if (name == "edge") return PerturbStrategy::kEdge;
  if (name == "random") return PerturbStrategy::kRandom;
  if (name == "community") return PerturbStrategy::kCommunity;
  throw std::invalid_argument("unknown perturbation strategy '" + name + "'");
}

Cover perturb(const Graph& g, const Cover& truth, const PerturbationSpec& spec) {
  if (g.node_count() != truth.node_count()) {
    throw std::invalid_argument("perturb: cover and graph sizes differ");
  }
  if (!(spec.p > 0.0 && spec.p <= 0.5)) {
    throw std::invalid_argument("perturb: intensity must lie in (0, 0.5]");
  }
  Lists lists = truth.membership_index();
  Rng rng(spec.seed);
  switch (spec.strategy) {
    case PerturbStrategy::kEdge: {
      const std::size_t target = floor_count(spec.p, g.edge_count());
      if (target == 0) return truth;
      perturb_edges(g, lists, target, rng);
      break;
    }
    case PerturbStrategy::kRandom: {
      const std::size_t target = floor_count(spec.p, g.node_count());
      if (target == 0) return truth;
      perturb_random(lists, target, rng);
      break;
    }
    case PerturbStrategy::kCommunity:
      perturb_communities(lists, truth.community_count(), spec.p, rng);
      break;
  }
  return cover_from_lists(lists, truth.community_count());
}

std::vector<SweepRow> robustness_sweep(const Graph& g, const Cover& truth,
                                       std::span<const PerturbStrategy> strategies,
                                       std::span<const double> p_grid, std::size_t trials,
                                       std::uint64_t seed, std::size_t jobs) {
  if (trials == 0) throw std::invalid_argument("robustness sweep needs at least one trial");
  const std::size_t cells = strategies.size() * p_grid.size();
  std::vector<std::array<double, 5>> samples(cells * trials);
  parallel_for(cells * trials, jobs, [&](std::size_t index) {
    const std::size_t cell = index / trials;
    const std::size_t trial = index % trials;
    const double p = p_grid[cell % p_grid.size()];
    Cover cover = truth;
    if (p != 0.0) {
      PerturbationSpec spec;
      spec.strategy = strategies[cell / p_grid.size()];
      spec.p = p;
      spec.seed = derive_seed(derive_seed(seed, cell), trial);
      cover = perturb(g, truth, spec);
    }
    const ScoreSet s = score_all(g, cover);
    samples[index] = {s.genperm, s.eq, s.qov, s.cc, s.oc};
  });

  std::vector<SweepRow> rows(cells);
  std::array<double, 5> best;
  best.fill(-std::numeric_limits<double>::infinity());
  for (std::size_t cell = 0; cell < cells; ++cell) {
    SweepRow& row = rows[cell];
    row.strategy = strategies[cell / p_grid.size()];
    row.p = p_grid[cell % p_grid.size()];
    for (std::size_t t = 0; t < trials; ++t) {
      for (std::size_t m = 0; m < 5; ++m) row.mean[m] += samples[cell * trials + t][m];
    }
    for (std::size_t m = 0; m < 5; ++m) {
      row.mean[m] /= static_cast<double>(trials);
      best[m] = std::max(best[m], row.mean[m]);
    }
  }
  for (SweepRow& row : rows) {
    for (std::size_t m = 0; m < 5; ++m) {
      const double scale = std::abs(best[m]);
      row.normalized[m] = scale > 0.0 ? row.mean[m] / scale : row.mean[m];
    }
  }
  return rows;
}

SampledNetwork sample_around(const Graph& g, const Cover& truth, NodeId anchor) {
  if (anchor >= truth.node_count() || truth.memberships(anchor).size() < 2) {
    throw std::invalid_argument("sample: anchor must belong to at least two communities");
  }
  std::vector<NodeId> nodes;
  for (const CommunityId c : truth.memberships(anchor)) {
    const auto members = truth.members(c);
    nodes.insert(nodes.end(), members.begin(), members.end());
  }
  SampledNetwork out;
  out.anchor = anchor;
  out.sub = induced_subgraph(g, nodes);
  out.cover = restrict_cover(truth, out.sub);
  return out;
}

SampledNetwork sample_subnetwork(const Graph& g, const Cover& truth, std::uint64_t seed) {
  if (g.node_count() != truth.node_count()) {
    throw std::invalid_argument("sample: cover and graph sizes differ");
  }
  std::vector<NodeId> eligible;
  for (NodeId v = 0; v < truth.node_count(); ++v) {
    if (truth.memberships(v).size() >= 2) eligible.push_back(v);
  }
  if (eligible.empty()) {
    throw std::invalid_argument("sample: no node belongs to two or more communities");
  }
  Rng rng(seed);
  return sample_around(g, truth, eligible[uniform_index(rng, eligible.size())]);
}

std::size_t genperm_bin(double value) {
  std::size_t bin = 0;
  for (int k = 1; k < static_cast<int>(kGenPermBins); ++k) {
    if (value >= static_cast<double>(k - 10) / 10.0) ++bin;
  }
  return bin;
}

BinnedProfile binned_profile(const Graph& g, const Cover& cover) {
  if (g.node_count() != cover.node_count()) {
    throw std::invalid_argument("profile: cover and graph sizes differ");
  }
  BinnedProfile profile;
  struct Sample {
    std::size_t bin;
    double memberships, internal, clustering, degree;
  };
  std::vector<Sample> samples;
  double max_internal = 0.0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) continue;
    const double memberships = static_cast<double>(cover.memberships(v).size());
    for (const VertexContext& ctx : vertex_contexts(g, cover, v)) {
      samples.push_back({genperm_bin(ctx.genperm), memberships, ctx.effective_internal,
                         ctx.clustering, static_cast<double>(ctx.degree)});
      max_internal = std::max(max_internal, ctx.effective_internal);
    }
  }
  for (std::size_t b = 0; b < kGenPermBins; ++b) {
    profile.bins[b].lower = static_cast<double>(b) / 10.0 - 1.0;
    profile.bins[b].upper = static_cast<double>(b + 1) / 10.0 - 1.0;
  }
  for (const Sample& s : samples) {
    ProfileBin& bin = profile.bins[s.bin];
    ++bin.count;
    bin.mean_memberships += s.memberships;
    bin.mean_internal += max_internal > 0.0 ? s.internal / max_internal : 0.0;
    bin.mean_clustering += s.clustering;
    bin.mean_degree += s.degree;
  }
  profile.pairs = samples.size();
  for (ProfileBin& bin : profile.bins) {
    if (bin.count == 0) continue;
    const double n = static_cast<double>(bin.count);
    bin.fraction = n / static_cast<double>(profile.pairs);
    bin.mean_memberships /= n;
    bin.mean_internal /= n;
    bin.mean_clustering /= n;
    bin.mean_degree /= n;
  }
  return profile;
}

FarnessProfile farness_profile(const Graph& g, const Cover& cover, CommunityId c,
                               bool allow_disconnected) {
  if (g.node_count() != cover.node_count()) {
    throw std::invalid_argument("farness: cover and graph sizes differ");
  }
  if (c >= cover.community_count()) throw std::invalid_argument("farness: no such community");
  const auto members = cover.members(c);
  const Subgraph sub = induced_subgraph(g, members);
  FarnessProfile out;
  out.disconnected = component_count(connected_components(sub.graph)) > 1;
  if (out.disconnected && !allow_disconnected) {
    throw std::domain_error("farness: community " + std::to_string(c) + " is disconnected");
  }
  for (NodeId local = 0; local < sub.graph.node_count(); ++local) {
    const auto dist = bfs_distances(sub.graph, local);
    double total = 0.0;
    std::size_t reached = 0;
    for (NodeId w = 0; w < dist.size(); ++w) {
      if (w == local || dist[w] == kUnreachable) continue;
      total += dist[w];
      ++reached;
    }
    const NodeId v = sub.to_original[local];
    const double genperm = g.degree(v) == 0 ? 0.0 : genperm_vc(g, cover, v, c);
    out.entries.push_back({v, reached ? total / static_cast<double>(reached) : 0.0, genperm});
  }
  return out;
}

std::optional<double> edge_assortativity(std::span<const Edge> edges,
                                         std::span<const double> attribute) {
  if (edges.empty()) return std::nullopt;
  // Both orientations are counted, so both marginals coincide.
  double sum = 0.0, sum_sq = 0.0, cross = 0.0;
  for (const auto& [u, v] : edges) {
    const double a = attribute[u], b = attribute[v];
    sum += a + b;
    sum_sq += a * a + b * b;
    cross += 2.0 * a * b;
  }
  const double count = 2.0 * static_cast<double>(edges.size());
  const double mean = sum / count;
  const double variance = sum_sq / count - mean * mean;
  if (!(variance > 1e-15)) return std::nullopt;
  const double r = (cross / count - mean * mean) / variance;
  return std::clamp(r, -1.0, 1.0);
}

std::optional<double> genperm_assortativity(const Graph& g, const Cover& cover,
                                            CommunityId c) {
  if (g.node_count() != cover.node_count()) {
    throw std::invalid_argument("assortativity: cover and graph sizes differ");
  }
  if (c >= cover.community_count()) {
    throw std::invalid_argument("assortativity: no such community");
  }
  const Subgraph sub = induced_subgraph(g, cover.members(c));
  std::vector<double> bins(sub.graph.node_count(), 0.0);
  for (NodeId local = 0; local < bins.size(); ++local) {
    const NodeId v = sub.to_original[local];
    if (g.degree(v) > 0) {
      bins[local] = static_cast<double>(genperm_bin(genperm_vc(g, cover, v, c)));
    }
  }
  return edge_assortativity(sub.graph.edges(), bins);
}

std::vector<std::vector<std::pair<NodeId, std::size_t>>> community_layers(const Graph& g,
                                                                         const Cover& cover) {
  std::vector<std::vector<std::pair<NodeId, double>>> scores(cover.community_count());
  for (const GenPermEntry& e : genperm_table(g, cover)) {
    scores[e.community].emplace_back(e.vertex, e.genperm);
  }
  std::vector<std::vector<std::pair<NodeId, std::size_t>>> layers(cover.community_count());
  for (CommunityId c = 0; c < cover.community_count(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [v, p] : scores[c]) {
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    const double range = hi - lo;
    for (const auto& [v, p] : scores[c]) {
      std::size_t layer = kLayers;
      if (range > 0.0) {
        const auto q = static_cast<std::size_t>(std::floor((p - lo) / range * kLayers));
        layer = std::min(q, kLayers - 1) + 1;
      }
      layers[c].emplace_back(v, layer);
    }
  }
  return layers;
}

std::vector<LayerRow> layered_removal(const Graph& g, const Cover& truth,
                                      const Detector& detector,
                                      std::span<const double> x_grid, std::size_t trials,
                                      std::uint64_t seed, std::size_t jobs,
                                      std::span<const std::size_t> layers) {
  if (trials == 0) throw std::invalid_argument("layered removal needs at least one trial");
  for (const std::size_t l : layers) {
    if (l < 1 || l > kLayers) throw std::invalid_argument("layered removal: layers are 1..4");
  }
  for (const double x : x_grid) {
    if (!(x >= 0.0 && x <= 100.0)) {
      throw std::invalid_argument("layered removal: x must lie in [0, 100]");
    }
  }
  const auto assignment = community_layers(g, truth);
  // members[c][l]: members of community c in layer l + 1.
  std::vector<std::array<std::vector<NodeId>, kLayers>> members(assignment.size());
  std::array<bool, kLayers> populated{};
  for (std::size_t c = 0; c < assignment.size(); ++c) {
    for (const auto& [v, layer] : assignment[c]) {
      members[c][layer - 1].push_back(v);
      populated[layer - 1] = true;
    }
  }
  for (const double x : x_grid) {
    if (x == 0.0) continue;
    for (const std::size_t l : layers) {
      if (!populated[l - 1]) {
        throw std::invalid_argument("layered removal: layer " + std::to_string(l) +
                                    " is empty");
      }
    }
  }

  const Cover baseline = detector(g, derive_seed(seed, 0));
  const std::size_t cells = layers.size() * x_grid.size();
  std::vector<double> onmi_values(cells * trials), removed_counts(cells * trials);
  parallel_for(cells * trials, jobs, [&](std::size_t index) {
    const std::size_t cell = index / trials;
    const std::size_t layer = layers[cell / x_grid.size()] - 1;
    const std::size_t xi = cell % x_grid.size();
    const double fraction = x_grid[xi] / 100.0;
    // Seeds depend on (layer, x position, trial) only, so selecting a subset
    // of layers reproduces the same trials.
    const std::uint64_t trial_seed =
        derive_seed(derive_seed(seed, layer + 1), xi * trials + index % trials);
    Rng rng(trial_seed);

    std::vector<bool> removed(g.node_count(), false);
    std::vector<NodeId> pool;
    for (const auto& by_layer : members) {
      pool = by_layer[layer];
      const std::size_t k = std::min(pool.size(), ceil_count(fraction, pool.size()));
      partial_shuffle(pool, k, rng);
      for (std::size_t i = 0; i < k; ++i) removed[pool[i]] = true;
    }
    std::vector<NodeId> survivors;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (removed[v]) continue;
      const auto nbrs = g.neighbors(v);
      if (std::any_of(nbrs.begin(), nbrs.end(), [&](NodeId w) { return !removed[w]; })) {
        survivors.push_back(v);
      }
    }
    removed_counts[index] = static_cast<double>(g.node_count() - survivors.size());
    if (survivors.size() == g.node_count()) {
      onmi_values[index] = 1.0;
      return;
    }
    if (survivors.empty()) {
      throw std::runtime_error("layered removal: every node was removed");
    }
    const Subgraph sub = induced_subgraph(g, survivors);
    const Cover reference = restrict_cover(baseline, sub);
    const Cover detected = detector(sub.graph, trial_seed);
    try {
      onmi_values[index] = onmi(reference, detected);
    } catch (const std::domain_error&) {
      // Both covers are the single all-node community.
      onmi_values[index] = 1.0;
    }
  });

  std::vector<LayerRow> rows(cells);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    LayerRow& row = rows[cell];
    row.layer = layers[cell / x_grid.size()];
    row.x = x_grid[cell % x_grid.size()];
    for (std::size_t t = 0; t < trials; ++t) {
      row.mean_onmi += onmi_values[cell * trials + t];
      row.mean_removed += removed_counts[cell * trials + t];
    }
    row.mean_onmi /= static_cast<double>(trials);
    row.mean_removed /= static_cast<double>(trials);
  }
  return rows;
}

SpreadTrace spread(const Graph& g, std::span<const NodeId> initiators, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (initiators.empty()) throw std::invalid_argument("spread: no initiators");
  if (n == 0 || component_count(connected_components(g)) != 1) {
    throw std::invalid_argument("spread: graph must be connected");
  }
  SpreadTrace trace;
  std::vector<bool> informed(n, false);
  for (const NodeId v : initiators) {
    if (v >= n) throw std::invalid_argument("spread: initiator out of range");
    if (!informed[v]) {
      informed[v] = true;
      trace.initiators.push_back(v);
    }
  }
  std::sort(trace.initiators.begin(), trace.initiators.end());
  // Informed vertices that may still have uninformed neighbors.
  std::vector<NodeId> active = trace.initiators;
  std::size_t count = active.size();
  trace.informed_per_step.push_back(count);
  Rng rng(seed);
  std::vector<NodeId> candidates, targets, still_active;
  while (count < n) {
    targets.clear();
    still_active.clear();
    for (const NodeId v : active) {
      candidates.clear();
      for (const NodeId w : g.neighbors(v)) {
        if (!informed[w]) candidates.push_back(w);
      }
      if (candidates.empty()) continue;
      targets.push_back(candidates[uniform_index(rng, candidates.size())]);
      if (candidates.size() > 1) still_active.push_back(v);
    }
    for (const NodeId w : targets) {
      if (!informed[w]) {
        informed[w] = true;
        ++count;
        still_active.push_back(w);
      }
    }
    // Senders with a single candidate just informed it, so only senders
    // with several candidates can still have uninformed neighbors.
    std::sort(still_active.begin(), still_active.end());
    still_active.erase(std::unique(still_active.begin(), still_active.end()),
                       still_active.end());
    active.swap(still_active);
    ++trace.steps;
    trace.informed_per_step.push_back(count);
  }
  return trace;
}

const char* to_string(InitiatorPolicy p) {
  switch (p) {
    case InitiatorPolicy::kRandom:
      return "random";
    case InitiatorPolicy::kDegree:
      return "degree";
    case InitiatorPolicy::kGenPerm:
      return "genperm";
    case InitiatorPolicy::kGenPermPerCommunity:
      return "genperm-community";
  }
  return "?";
}

InitiatorPolicy parse_initiator_policy(const std::string& name) {
  if (name == "random") return InitiatorPolicy::kRandom;
  if (name == "degree") return InitiatorPolicy::kDegree;
  if (name == "genperm") return InitiatorPolicy::kGenPerm;
  if (name == "genperm-community") return InitiatorPolicy::kGenPermPerCommunity;
  throw std::invalid_argument("unknown initiator policy '" + name + "'");
}

std::vector<NodeId> select_initiators(const Graph& g, const Cover& cover,
                                      InitiatorPolicy policy, std::size_t k,
                                      std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (k < 1 || k > n) throw std::invalid_argument("initiators: k must lie in [1, |V|]");
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  if (policy == InitiatorPolicy::kRandom) {
    Rng rng(seed);
    partial_shuffle(nodes, k, rng);
    nodes.resize(k);
    return nodes;
  }
  if (policy != InitiatorPolicy::kDegree && cover.node_count() != n) {
    throw std::invalid_argument("initiators: cover and graph sizes differ");
  }
  const auto better = [&](double ka, NodeId a, double kb, NodeId b) {
    if (ka != kb) return ka > kb;
    if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
    return a < b;
  };
  if (policy == InitiatorPolicy::kGenPermPerCommunity) {
    std::vector<std::vector<std::pair<double, NodeId>>> ranked(cover.community_count());
    for (const GenPermEntry& e : genperm_table(g, cover)) {
      ranked[e.community].emplace_back(e.genperm, e.vertex);
    }
    for (auto& r : ranked) {
      std::sort(r.begin(), r.end(), [&](const auto& x, const auto& y) {
        return better(x.first, x.second, y.first, y.second);
      });
    }
    std::vector<CommunityId> order(cover.community_count());
    std::iota(order.begin(), order.end(), CommunityId{0});
    std::stable_sort(order.begin(), order.end(), [&](CommunityId a, CommunityId b) {
      return ranked[a].size() > ranked[b].size();
    });
    std::vector<NodeId> chosen;
    std::vector<bool> taken(n, false);
    std::vector<std::size_t> cursor(cover.community_count(), 0);
    while (chosen.size() < k) {
      for (const CommunityId c : order) {
        auto& at = cursor[c];
        while (at < ranked[c].size() && taken[ranked[c][at].second]) ++at;
        if (at == ranked[c].size()) continue;
        taken[ranked[c][at].second] = true;
        chosen.push_back(ranked[c][at].second);
        if (chosen.size() == k) break;
      }
    }
    return chosen;
  }
  std::vector<double> key(n);
  if (policy == InitiatorPolicy::kDegree) {
    for (NodeId v = 0; v < n; ++v) key[v] = static_cast<double>(g.degree(v));
  } else {
    std::fill(key.begin(), key.end(), -std::numeric_limits<double>::infinity());
    for (const GenPermEntry& e : genperm_table(g, cover)) {
      key[e.vertex] = std::max(key[e.vertex], e.genperm);
    }
  }
  std::partial_sort(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(k), nodes.end(),
                    [&](NodeId a, NodeId b) { return better(key[a], a, key[b], b); });
  nodes.resize(k);
  return nodes;
}

}  // namespace genperm
