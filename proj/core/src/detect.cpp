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

#include "genperm/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "genperm/metrics.hpp"
#include "genperm/random.hpp"

namespace genperm {
namespace {

// Skip threshold for vertices already at the maximum GenPerm of 1.
constexpr double kSaturated = 1.0 - 1e-12;
// Per-vertex rounding allowance when comparing GenPerm sums before and
// after a merge; exact ties differ only by accumulated rounding.
constexpr double kMergeSlack = 1e-12;

class Sweeper {
 public:
  explicit Sweeper(const Graph& g) : g_(g), membership_(g.node_count()) {
    for (const auto& [u, v] : g.edges()) {
      const auto id = static_cast<CommunityId>(members_.size());
      members_.push_back({u, v});
      membership_[u].push_back(id);
      membership_[v].push_back(id);
    }
    // Edge ids grow with (u, v) lexicographically, so every list is sorted.
  }

  void update(NodeId v) {
    const std::vector<CommunityId> own = membership_[v];
    const JoinScorer scorer(g_, membership_, v, own);
    const double current = scorer.total(own);
    if (current >= kSaturated) return;

    candidates_.clear();
    for (const NodeId u : g_.neighbors(v)) {
      candidates_.insert(candidates_.end(), membership_[u].begin(), membership_[u].end());
    }
    std::sort(candidates_.begin(), candidates_.end());
    candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());

    std::vector<CommunityId> chosen;
    for (const CommunityId c : candidates_) {
      if (scorer.score_with(c) > 0.0) chosen.push_back(c);
    }

    if (chosen.empty()) {
      if (current < 0.0) become_singleton(v);
      return;
    }
    if (chosen == own) return;
    if (scorer.total(chosen) > current) assign(v, std::move(chosen));
  }

  /// Empties every community whose member set repeats an earlier one, so
  /// the membership index agrees with the collapsed Cover. Returns the
  /// number removed.
  std::size_t collapse_duplicates() {
    std::vector<CommunityId> ids;
    for (CommunityId c = 0; c < members_.size(); ++c) {
      if (members_[c].empty()) continue;
      std::sort(members_[c].begin(), members_[c].end());
      ids.push_back(c);
    }
    std::stable_sort(ids.begin(), ids.end(),
                     [&](CommunityId a, CommunityId b) { return members_[a] < members_[b]; });
    std::size_t removed = 0;
    CommunityId keep = ids.empty() ? 0 : ids.front();
    for (std::size_t i = 1; i < ids.size(); ++i) {
      const CommunityId c = ids[i];
      if (members_[c] != members_[keep]) {
        keep = c;
        continue;
      }
      for (const NodeId v : members_[c]) {
        auto& own = membership_[v];
        own.erase(std::lower_bound(own.begin(), own.end(), c));
      }
      members_[c].clear();
      members_[c].shrink_to_fit();
      ++removed;
    }
    return removed;
  }

  /// Global-objective polish: v leaves one of its communities whenever that
  /// strictly raises the summed GenPerm of v and its neighbors, the only
  /// vertices whose scores depend on v's membership. The sweep itself
  /// looks only at v's own score, so a saturated vertex never drops a
  /// community that depresses its neighbors. Returns the moves made.
  std::size_t prune(std::span<const NodeId> order, std::size_t max_rounds) {
    std::size_t moves = 0;
    std::vector<NodeId> affected;
    for (std::size_t round = 0; round < max_rounds; ++round) {
      std::size_t round_moves = 0;
      for (const NodeId v : order) {
        if (membership_[v].size() < 2) continue;
        affected.assign(g_.neighbors(v).begin(), g_.neighbors(v).end());
        affected.push_back(v);
        const double slack = kMergeSlack * static_cast<double>(affected.size());
        const std::vector<CommunityId> own = membership_[v];
        double before = local_sum(affected);
        for (const CommunityId c : own) {
          auto& mine = membership_[v];
          const auto at = std::lower_bound(mine.begin(), mine.end(), c);
          mine.erase(at);
          const double after = local_sum(affected);
          if (after > before + slack) {
            leave(v, c);
            before = after;
            ++round_moves;
            if (mine.size() < 2) break;
          } else {
            mine.insert(std::lower_bound(mine.begin(), mine.end(), c), c);
          }
        }
      }
      moves += round_moves;
      if (round_moves == 0) break;
    }
    return moves;
  }

  /// Merges overlapping community pairs whose union is a clique while the
  /// merge does not lower the GenPerm of the affected vertices. Returns the
  /// number of merges.
  std::size_t consolidate() {
    drop_redundant_singletons();
    // Candidate pairs share at least two members and have a complete
    // union; a pair is queued again only after one side grows.
    std::vector<std::pair<CommunityId, CommunityId>> pairs;
    for (const auto& own : membership_) {
      for (std::size_t i = 0; i < own.size(); ++i) {
        for (std::size_t j = i + 1; j < own.size(); ++j) pairs.emplace_back(own[i], own[j]);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::pair<CommunityId, CommunityId>> initial;
    for (std::size_t i = 0; i < pairs.size();) {
      std::size_t j = i;
      while (j < pairs.size() && pairs[j] == pairs[i]) ++j;
      if (j - i >= 2) initial.push_back(pairs[i]);
      i = j;
    }
    std::set<std::pair<CommunityId, CommunityId>> queue(initial.begin(), initial.end());
    std::size_t merges = 0;
    while (!queue.empty()) {
      const auto [a, b] = *queue.begin();
      queue.erase(queue.begin());
      if (members_[a].empty() || members_[b].empty()) continue;
      if (shared_members(a, b) < 2 || !complete_union(a, b)) continue;
      if (!try_merge(a, b)) continue;
      ++merges;
      std::vector<CommunityId> touching;
      for (const NodeId v : members_[a]) {
        touching.insert(touching.end(), membership_[v].begin(), membership_[v].end());
      }
      std::sort(touching.begin(), touching.end());
      touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
      for (const CommunityId c : touching) {
        if (c != a) queue.insert({std::min(a, c), std::max(a, c)});
      }
    }
    return merges;
  }

  Cover cover() const {
    std::vector<std::vector<NodeId>> communities;
    for (const auto& m : members_) {
      if (!m.empty()) communities.push_back(m);
    }
    return Cover::build(g_.node_count(), std::move(communities));
  }

 private:
  void leave(NodeId v, CommunityId c) {
    auto& m = members_[c];
    const auto it = std::find(m.begin(), m.end(), v);
    *it = m.back();
    m.pop_back();
    if (m.empty()) m.shrink_to_fit();
  }

  void assign(NodeId v, std::vector<CommunityId> next) {
    const auto& prev = membership_[v];
    std::vector<CommunityId> dropped;
    std::vector<CommunityId> added;
    std::set_difference(prev.begin(), prev.end(), next.begin(), next.end(),
                        std::back_inserter(dropped));
    std::set_difference(next.begin(), next.end(), prev.begin(), prev.end(),
                        std::back_inserter(added));
    for (const CommunityId c : dropped) leave(v, c);
    for (const CommunityId c : added) members_[c].push_back(v);
    membership_[v] = std::move(next);
  }

  // A one-member community whose member also belongs elsewhere contributes
  // nothing to any GenPerm term; remove it.
  void drop_redundant_singletons() {
    for (CommunityId c = 0; c < members_.size(); ++c) {
      if (members_[c].size() != 1) continue;
      const NodeId v = members_[c].front();
      if (membership_[v].size() < 2) continue;
      auto& own = membership_[v];
      own.erase(std::lower_bound(own.begin(), own.end(), c));
      members_[c].clear();
      members_[c].shrink_to_fit();
    }
  }

  // True when the union of the two communities induces a complete subgraph.
  bool complete_union(CommunityId a, CommunityId b) {
    std::vector<NodeId> together = members_[a];
    together.insert(together.end(), members_[b].begin(), members_[b].end());
    std::sort(together.begin(), together.end());
    together.erase(std::unique(together.begin(), together.end()), together.end());
    for (const NodeId v : together) mark_[v] = true;
    bool complete = true;
    for (const NodeId v : together) {
      std::size_t inside = 0;
      for (const NodeId u : g_.neighbors(v)) inside += mark_[u] ? 1 : 0;
      if (inside + 1 != together.size()) {
        complete = false;
        break;
      }
    }
    for (const NodeId v : together) mark_[v] = false;
    return complete;
  }

  std::size_t shared_members(CommunityId a, CommunityId b) const {
    const bool a_small = members_[a].size() <= members_[b].size();
    const auto& small = a_small ? members_[a] : members_[b];
    const CommunityId other = a_small ? b : a;
    return static_cast<std::size_t>(std::count_if(small.begin(), small.end(), [&](NodeId v) {
      return std::binary_search(membership_[v].begin(), membership_[v].end(), other);
    }));
  }

  // I(w) / (E_max(w) * D(w)): the only part of P_g(w) a merge can change
  // when w belongs to neither merged community.
  double pull(NodeId w) {
    std::size_t internal = 0;
    groups_.clear();
    const auto& own = membership_[w];
    for (const NodeId u : g_.neighbors(w)) {
      const auto& theirs = membership_[u];
      bool shares = false;
      for (std::size_t p = 0, q = 0; p < own.size() && q < theirs.size();) {
        if (own[p] < theirs[q]) {
          ++p;
        } else if (theirs[q] < own[p]) {
          ++q;
        } else {
          shares = true;
          break;
        }
      }
      if (shares) {
        ++internal;
      } else {
        groups_.insert(groups_.end(), theirs.begin(), theirs.end());
      }
    }
    std::sort(groups_.begin(), groups_.end());
    std::size_t external_max = 1;
    for (std::size_t i = 0; i < groups_.size();) {
      std::size_t j = i;
      while (j < groups_.size() && groups_[j] == groups_[i]) ++j;
      external_max = std::max(external_max, j - i);
      i = j;
    }
    return static_cast<double>(internal) /
           (static_cast<double>(external_max) * static_cast<double>(g_.degree(w)));
  }

  double local_sum(std::span<const NodeId> vertices) const {
    double sum = 0.0;
    for (const NodeId u : vertices) sum += genperm_total(g_, membership_, u, membership_[u]);
    return sum;
  }

  double affected_sum(std::span<const NodeId> inside, std::span<const NodeId> outside) {
    double sum = 0.0;
    for (const NodeId v : inside) sum += genperm_total(g_, membership_, v, membership_[v]);
    for (const NodeId w : outside) sum += pull(w);
    return sum;
  }

  // Folds b into a when that keeps the summed GenPerm of every vertex whose
  // score can change at least as high. Members of either community may
  // change in every term; their other neighbors only through E_max.
  bool try_merge(CommunityId a, CommunityId b) {
    std::vector<NodeId> inside = members_[a];
    inside.insert(inside.end(), members_[b].begin(), members_[b].end());
    std::sort(inside.begin(), inside.end());
    inside.erase(std::unique(inside.begin(), inside.end()), inside.end());
    std::vector<NodeId> outside;
    for (const NodeId v : inside) {
      for (const NodeId u : g_.neighbors(v)) {
        if (!std::binary_search(inside.begin(), inside.end(), u)) outside.push_back(u);
      }
    }
    std::sort(outside.begin(), outside.end());
    outside.erase(std::unique(outside.begin(), outside.end()), outside.end());

    const double before = affected_sum(inside, outside);
    const std::vector<NodeId> moved = members_[b];
    std::vector<NodeId> joined;
    std::vector<bool> was_joined(moved.size(), false);
    for (std::size_t i = 0; i < moved.size(); ++i) {
      auto& own = membership_[moved[i]];
      own.erase(std::lower_bound(own.begin(), own.end(), b));
      const auto it = std::lower_bound(own.begin(), own.end(), a);
      if (it == own.end() || *it != a) {
        own.insert(it, a);
        joined.push_back(moved[i]);
        was_joined[i] = true;
      }
    }
    const double after = affected_sum(inside, outside);
    const double slack = kMergeSlack * static_cast<double>(inside.size() + outside.size());
    if (after >= before - slack) {
      members_[a].insert(members_[a].end(), joined.begin(), joined.end());
      members_[b].clear();
      members_[b].shrink_to_fit();
      return true;
    }
    for (std::size_t i = 0; i < moved.size(); ++i) {
      auto& own = membership_[moved[i]];
      if (was_joined[i]) own.erase(std::lower_bound(own.begin(), own.end(), a));
      own.insert(std::lower_bound(own.begin(), own.end(), b), b);
    }
    return false;
  }

  void become_singleton(NodeId v) {
    for (const CommunityId c : membership_[v]) leave(v, c);
    const auto id = static_cast<CommunityId>(members_.size());
    members_.push_back({v});
    membership_[v] = {id};
  }

  const Graph& g_;
  std::vector<std::vector<CommunityId>> membership_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<CommunityId> candidates_;
  std::vector<CommunityId> groups_;
  std::vector<bool> mark_ = std::vector<bool>(g_.node_count(), false);
};

DetectionResult run_connected(const Graph& g, const DetectConfig& cfg) {
  std::vector<NodeId> order(g.node_count());
  std::iota(order.begin(), order.end(), NodeId{0});
  if (cfg.ordering == VertexOrder::kShuffle) {
    Rng rng(cfg.seed);
    shuffle(std::span<NodeId>(order), rng);
  }

  DetectionResult result;
  Sweeper sweeper(g);
  double previous = genperm_network(g, sweeper.cover());
  result.initial_objective = previous;
  Cover cover;
  while (result.iterations_used < cfg.max_iter) {
    for (const NodeId v : order) sweeper.update(v);
    ++result.iterations_used;
    cover = sweeper.cover();
    const double objective = genperm_network(g, cover);
    result.objective_history.push_back(objective);
    if (objective < previous) {
      result.warnings.push_back("objective decreased in iteration " +
                                std::to_string(result.iterations_used));
    }
    if (std::abs(objective - previous) <= cfg.objective_tolerance) {
      result.converged = true;
      break;
    }
    previous = objective;
  }
  if (cfg.prune_memberships) {
    sweeper.collapse_duplicates();
    result.pruned = sweeper.prune(order, cfg.max_iter);
  }
  if (cfg.merge_ties) result.merges = sweeper.consolidate();
  if (cfg.prune_memberships || cfg.merge_ties) {
    cover = sweeper.cover();
    result.objective_history.back() = genperm_network(g, cover);
  }
  result.per_vertex_genperm = genperm_per_vertex(g, cover);
  result.cover = std::move(cover);
  return result;
}

DetectionResult run_per_component(const Graph& g, const DetectConfig& cfg,
                                  const std::vector<std::uint32_t>& labels,
                                  std::size_t components) {
  std::vector<std::vector<NodeId>> nodes(components);
  for (NodeId v = 0; v < g.node_count(); ++v) nodes[labels[v]].push_back(v);

  DetectionResult merged;
  merged.converged = true;
  std::vector<std::vector<NodeId>> communities;
  std::vector<std::pair<double, std::vector<double>>> histories;
  const double n = static_cast<double>(g.node_count());
  for (std::size_t k = 0; k < components; ++k) {
    const Subgraph sub = induced_subgraph(g, nodes[k]);
    DetectConfig local = cfg;
    local.seed = derive_seed(cfg.seed, k);
    DetectionResult part = run_connected(sub.graph, local);
    const double weight = static_cast<double>(nodes[k].size()) / n;
    merged.initial_objective += weight * part.initial_objective;
    merged.iterations_used = std::max(merged.iterations_used, part.iterations_used);
    merged.converged = merged.converged && part.converged;
    merged.merges += part.merges;
    merged.pruned += part.pruned;
    for (const auto& w : part.warnings) {
      merged.warnings.push_back("component " + std::to_string(k) + ": " + w);
    }
    for (const auto& members : part.cover.communities()) {
      std::vector<NodeId> mapped;
      mapped.reserve(members.size());
      for (const NodeId v : members) mapped.push_back(sub.to_original[v]);
      communities.push_back(std::move(mapped));
    }
    histories.emplace_back(weight, std::move(part.objective_history));
  }
  std::vector<double> weighted_history(merged.iterations_used, 0.0);
  for (const auto& [weight, history] : histories) {
    for (std::size_t t = 0; t < weighted_history.size(); ++t) {
      weighted_history[t] += weight * history[std::min(t, history.size() - 1)];
    }
  }
  // Components that stop early keep contributing their final value; the
  // last entry is recomputed on the merged cover for self-consistency.
  merged.cover = Cover::build(g.node_count(), std::move(communities));
  merged.per_vertex_genperm = genperm_per_vertex(g, merged.cover);
  merged.objective_history = std::move(weighted_history);
  merged.objective_history.back() = genperm_network(g, merged.cover);
  return merged;
}

}  // namespace

DetectionResult max_genperm(const Graph& g, const DetectConfig& cfg) {
  if (cfg.max_iter == 0) throw std::invalid_argument("max_iter must be at least 1");
  if (g.node_count() == 0) throw std::invalid_argument("cannot detect communities in an empty graph");
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) {
      throw std::domain_error("graph has isolated vertex " + std::to_string(v));
    }
  }
  const auto labels = connected_components(g);
  const std::size_t components = component_count(labels);
  if (components == 1) return run_connected(g, cfg);
  if (!cfg.per_component) {
    throw std::invalid_argument("graph is disconnected (" + std::to_string(components) +
                                " components); enable per-component detection");
  }
  return run_per_component(g, cfg, labels, components);
}

ConstantCommunities constant_communities(const std::vector<Cover>& runs) {
  if (runs.size() < 2) throw std::invalid_argument("constant communities need at least two runs");
  const std::size_t n = runs.front().node_count();
  for (const auto& run : runs) {
    if (run.node_count() != n) throw std::invalid_argument("runs cover different node sets");
  }
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  const auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };

  std::vector<NodeId> partners;
  for (NodeId u = 0; u < n; ++u) {
    partners.clear();
    for (const CommunityId c : runs.front().memberships(u)) {
      for (const NodeId v : runs.front().members(c)) {
        if (v > u) partners.push_back(v);
      }
    }
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (const NodeId v : partners) {
      const bool stable = std::all_of(runs.begin() + 1, runs.end(), [&](const Cover& run) {
        return run.shared_count(u, v) > 0;
      });
      if (stable) {
        const NodeId a = find(u);
        const NodeId b = find(v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }

  ConstantCommunities out;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (NodeId v = 0; v < n; ++v) {
    const NodeId root = find(v);
    if (slot[root] == SIZE_MAX) {
      slot[root] = out.groups.size();
      out.groups.emplace_back();
    }
    out.groups[slot[root]].push_back(v);
  }
  out.phi = n == 0 ? 0.0 : static_cast<double>(out.groups.size()) / static_cast<double>(n);
  return out;
}

}  // namespace genperm
