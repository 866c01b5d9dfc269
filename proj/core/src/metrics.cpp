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

#include "genperm/metrics.hpp"

#include "neighborhood.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

namespace genperm {
namespace {

// Largest integer such that every smaller one is exact in a double.
constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 53;

template <typename A, typename B>
std::uint32_t intersection_size(const A& a, const B& b) {
  std::uint32_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool has_community(const std::vector<CommunityId>& list, CommunityId c) {
  return std::binary_search(list.begin(), list.end(), c);
}

/// lcm of the given positive counts, 0 once it exceeds the exact range.
std::uint64_t bounded_lcm(std::uint64_t acc, std::uint64_t s) {
  if (acc == 0) return 0;
  const std::uint64_t l = acc / std::gcd(acc, s) * s;
  return l >= kExactLimit ? 0 : l;
}

/// Sum of 1/s over the counts, rounded once from the exact fraction when
/// it fits, summed in order otherwise.
double reciprocal_sum(std::span<const std::uint32_t> counts) {
  if (std::all_of(counts.begin(), counts.end(), [](std::uint32_t s) { return s == 1; })) {
    return static_cast<double>(counts.size());
  }
  std::uint64_t den = 1;
  for (const auto s : counts) den = bounded_lcm(den, s);
  if (den != 0) {
    std::uint64_t num = 0;
    for (const auto s : counts) num += den / s;
    if (num < kExactLimit) return static_cast<double>(num) / static_cast<double>(den);
  }
  double sum = 0.0;
  for (const auto s : counts) sum += 1.0 / s;
  return sum;
}

/// Edges of g among `nodes` (sorted).
std::size_t edges_among(const Graph& g, std::span<const NodeId> nodes) {
  std::size_t twice = 0;
  for (const NodeId a : nodes) twice += intersection_size(g.neighbors(a), nodes);
  return twice / 2;
}

double clustering_from(std::size_t internal, std::size_t in_community, std::size_t edges) {
  if (internal < 2) return 1.0;
  if (in_community < 2) return 0.0;
  const double k = static_cast<double>(in_community);
  return static_cast<double>(edges) / (0.5 * k * (k - 1.0));
}

double combine(double effective, std::size_t external_max, std::size_t degree,
               double clustering, std::size_t internal) {
  const double pull = effective / (static_cast<double>(external_max) *
                                   static_cast<double>(degree));
  if (internal == 0) return pull;
  return pull - (1.0 - clustering) * effective / static_cast<double>(internal);
}

std::size_t max_run_length(std::vector<CommunityId>& ids) {
  std::sort(ids.begin(), ids.end());
  std::size_t best = 0;
  for (std::size_t i = 0; i < ids.size();) {
    std::size_t j = i;
    while (j < ids.size() && ids[j] == ids[i]) ++j;
    best = std::max(best, j - i);
    i = j;
  }
  return best;
}

void require_degree(const Graph& g, NodeId v) {
  if (g.degree(v) == 0) {
    throw std::domain_error("GenPerm undefined for isolated vertex " + std::to_string(v));
  }
}

void require_universe(const Graph& g, const Cover& cover) {
  if (g.node_count() != cover.node_count()) {
    throw std::invalid_argument("cover and graph node counts differ");
  }
}

// Contexts of v for membership `own`, bucketing neighbors by shared
// community in one merge pass per neighbor.
std::vector<VertexContext> contexts_with(const Graph& g, const detail::NeighborMatrix& matrix,
                                         MembershipIndex membership, NodeId v,
                                         std::span<const CommunityId> own) {
  const auto adj = g.neighbors(v);
  std::vector<std::uint32_t> shared(adj.size(), 0);
  std::vector<std::vector<std::uint32_t>> buckets(own.size());
  std::vector<CommunityId> external_ids;
  std::size_t internal = 0;
  std::uint64_t den = 1;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const auto& theirs = membership[adj[i]];
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < own.size() && q < theirs.size()) {
      if (own[p] < theirs[q]) {
        ++p;
      } else if (theirs[q] < own[p]) {
        ++q;
      } else {
        buckets[p].push_back(static_cast<std::uint32_t>(i));
        ++shared[i];
        ++p;
        ++q;
      }
    }
    if (shared[i] > 0) {
      ++internal;
      den = bounded_lcm(den, shared[i]);
    } else {
      external_ids.insert(external_ids.end(), theirs.begin(), theirs.end());
    }
  }
  const std::size_t external_max = std::max<std::size_t>(1, max_run_length(external_ids));

  std::vector<VertexContext> out;
  out.reserve(own.size());
  std::vector<std::uint32_t> counts;
  for (std::size_t p = 0; p < own.size(); ++p) {
    counts.clear();
    for (const auto slot : buckets[p]) counts.push_back(shared[slot]);
    VertexContext ctx;
    ctx.vertex = v;
    ctx.community = own[p];
    ctx.degree = adj.size();
    ctx.internal = internal;
    ctx.neighbors_in_community = buckets[p].size();
    ctx.external_max = external_max;
    ctx.effective_internal = reciprocal_sum(counts);
    if (den != 0) {
      ctx.effective_internal_den = den;
      for (const auto s : counts) ctx.effective_internal_num += den / s;
    }
    ctx.clustering = clustering_from(internal, buckets[p].size(), matrix.edges_among(buckets[p]));
    ctx.genperm = combine(ctx.effective_internal, external_max, ctx.degree,
                          ctx.clustering, internal);
    out.push_back(ctx);
  }
  return out;
}

// Buffers reused by total_with across calls on one thread.
struct TotalScratch {
  std::vector<std::uint32_t> shared;
  std::vector<std::uint32_t> hit_community;
  std::vector<std::uint32_t> hit_slot;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> slots;
  std::vector<std::uint32_t> counts;
  std::vector<CommunityId> external_ids;
};

// Sum of P_g^c(v) over `own`, computed exactly as contexts_with computes
// each term and summed in the same order, without building contexts.
double total_with(const Graph& g, const detail::NeighborMatrix& matrix,
                  MembershipIndex membership, NodeId v, std::span<const CommunityId> own) {
  thread_local TotalScratch scratch;
  auto& s = scratch;
  const auto adj = g.neighbors(v);
  s.shared.assign(adj.size(), 0);
  s.hit_community.clear();
  s.hit_slot.clear();
  s.external_ids.clear();
  std::size_t internal = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const auto& theirs = membership[adj[i]];
    std::size_t p = 0;
    std::size_t q = 0;
    while (p < own.size() && q < theirs.size()) {
      if (own[p] < theirs[q]) {
        ++p;
      } else if (theirs[q] < own[p]) {
        ++q;
      } else {
        s.hit_community.push_back(static_cast<std::uint32_t>(p));
        s.hit_slot.push_back(static_cast<std::uint32_t>(i));
        ++s.shared[i];
        ++p;
        ++q;
      }
    }
    if (s.shared[i] > 0) {
      ++internal;
    } else {
      s.external_ids.insert(s.external_ids.end(), theirs.begin(), theirs.end());
    }
  }
  const std::size_t external_max = std::max<std::size_t>(1, max_run_length(s.external_ids));

  // Counting sort of the hits by community keeps slots ascending.
  s.offsets.assign(own.size() + 1, 0);
  for (const auto p : s.hit_community) ++s.offsets[p + 1];
  for (std::size_t p = 0; p < own.size(); ++p) s.offsets[p + 1] += s.offsets[p];
  s.slots.resize(s.hit_slot.size());
  {
    std::vector<std::uint32_t>& cursor = s.counts;
    cursor.assign(s.offsets.begin(), s.offsets.end() - 1);
    for (std::size_t h = 0; h < s.hit_slot.size(); ++h) {
      s.slots[cursor[s.hit_community[h]]++] = s.hit_slot[h];
    }
  }
  double total = 0.0;
  for (std::size_t p = 0; p < own.size(); ++p) {
    const std::span<const std::uint32_t> bucket(s.slots.data() + s.offsets[p],
                                                s.offsets[p + 1] - s.offsets[p]);
    s.counts.clear();
    for (const auto slot : bucket) s.counts.push_back(s.shared[slot]);
    const double effective = reciprocal_sum(s.counts);
    const double clustering =
        clustering_from(internal, bucket.size(), matrix.edges_among(bucket));
    total += combine(effective, external_max, adj.size(), clustering, internal);
  }
  return total;
}

}  // namespace

std::vector<VertexContext> vertex_contexts(const Graph& g, MembershipIndex membership,
                                           NodeId v, std::span<const CommunityId> own) {
  require_degree(g, v);
  const detail::NeighborMatrix matrix(g, v);
  return contexts_with(g, matrix, membership, v, own);
}

std::vector<VertexContext> vertex_contexts(const Graph& g, const Cover& cover, NodeId v) {
  require_universe(g, cover);
  return vertex_contexts(g, cover.membership_index(), v, cover.memberships(v));
}

double genperm_total(const Graph& g, MembershipIndex membership, NodeId v,
                     std::span<const CommunityId> own) {
  require_degree(g, v);
  thread_local detail::NeighborMatrix matrix(g);
  matrix.rebuild(g, v);
  return total_with(g, matrix, membership, v, own);
}

JoinScorer::JoinScorer(const Graph& g, MembershipIndex membership, NodeId v,
                       std::span<const CommunityId> own)
    : g_(g), membership_(membership), v_(v), own_(own) {
  require_degree(g, v);
  matrix_ = std::make_unique<detail::NeighborMatrix>(g, v);
  const auto adj = g.neighbors(v);
  shared_.resize(adj.size());
  std::vector<CommunityId> external_ids;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const auto& theirs = membership[adj[i]];
    shared_[i] = intersection_size(own, theirs);
    if (shared_[i] > 0) {
      ++internal_;
    } else {
      external_ids.insert(external_ids.end(), theirs.begin(), theirs.end());
    }
  }
  std::sort(external_ids.begin(), external_ids.end());
  for (const CommunityId c : external_ids) {
    if (external_.empty() || external_.back().first != c) {
      external_.emplace_back(c, 0);
    }
    ++external_.back().second;
  }
  for (const auto& [c, n] : external_) {
    external_max_ = std::max<std::size_t>(external_max_, n);
  }
}

JoinScorer::~JoinScorer() = default;

double JoinScorer::score_with(CommunityId c) const {
  const auto adj = g_.neighbors(v_);
  const bool already_member = std::binary_search(own_.begin(), own_.end(), c);
  slots_.clear();
  counts_.clear();
  std::size_t newly_internal = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (!has_community(membership_[adj[i]], c)) continue;
    slots_.push_back(static_cast<std::uint32_t>(i));
    counts_.push_back(already_member ? shared_[i] : shared_[i] + 1);
    if (!already_member && shared_[i] == 0) ++newly_internal;
  }
  const std::size_t internal = internal_ + newly_internal;
  std::size_t external_max = external_max_;
  if (newly_internal > 0) {
    auto external = external_;
    for (const auto slot : slots_) {
      if (shared_[slot] != 0) continue;
      for (const CommunityId d : membership_[adj[slot]]) {
        const auto it = std::lower_bound(
            external.begin(), external.end(), d,
            [](const auto& entry, CommunityId key) { return entry.first < key; });
        --it->second;
      }
    }
    external_max = 1;
    for (const auto& [d, n] : external) external_max = std::max<std::size_t>(external_max, n);
  }
  const double effective = reciprocal_sum(counts_);
  const double clustering =
      clustering_from(internal, slots_.size(), matrix_->edges_among(slots_));
  return combine(effective, external_max, adj.size(), clustering, internal);
}

double JoinScorer::total(std::span<const CommunityId> hypothesis) const {
  return total_with(g_, *matrix_, membership_, v_, hypothesis);
}

double permanence(const Graph& g, const Cover& partition, NodeId v) {
  require_universe(g, partition);
  require_degree(g, v);
  const auto adj = g.neighbors(v);
  if (partition.memberships(v).size() != 1) {
    throw std::invalid_argument("permanence requires a disjoint partition");
  }
  const CommunityId own = partition.memberships(v).front();
  std::vector<NodeId> internal;
  std::vector<CommunityId> external;
  for (const NodeId u : adj) {
    const auto m = partition.memberships(u);
    if (m.size() != 1) throw std::invalid_argument("permanence requires a disjoint partition");
    if (m.front() == own) {
      internal.push_back(u);
    } else {
      external.push_back(m.front());
    }
  }
  const std::size_t external_max = std::max<std::size_t>(1, max_run_length(external));
  double clustering = 1.0;
  if (internal.size() >= 2) {
    const double k = static_cast<double>(internal.size());
    clustering = static_cast<double>(edges_among(g, internal)) / (0.5 * k * (k - 1.0));
  }
  return static_cast<double>(internal.size()) /
             (static_cast<double>(external_max) * static_cast<double>(adj.size())) -
         (1.0 - clustering);
}

double genperm_vc(const Graph& g, const Cover& cover, NodeId v, CommunityId c) {
  require_universe(g, cover);
  if (c >= cover.community_count() || !cover.contains(c, v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " is not in community " +
                                std::to_string(c));
  }
  for (const auto& ctx : vertex_contexts(g, cover, v)) {
    if (ctx.community == c) return ctx.genperm;
  }
  return 0.0;
}

double genperm_vertex(const Graph& g, const Cover& cover, NodeId v) {
  require_universe(g, cover);
  return genperm_total(g, cover.membership_index(), v, cover.memberships(v));
}

std::vector<double> genperm_per_vertex(const Graph& g, const Cover& cover) {
  require_universe(g, cover);
  std::vector<double> values(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) values[v] = genperm_vertex(g, cover, v);
  return values;
}

double genperm_network(const Graph& g, const Cover& cover) {
  const auto values = genperm_per_vertex(g, cover);
  if (values.empty()) throw std::domain_error("GenPerm of an empty graph");
  double sum = 0.0;
  for (const double x : values) sum += x;
  return sum / static_cast<double>(values.size());
}

std::vector<GenPermEntry> genperm_table(const Graph& g, const Cover& cover) {
  require_universe(g, cover);
  std::vector<GenPermEntry> table;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    for (const auto& ctx : vertex_contexts(g, cover, v)) {
      table.push_back({v, ctx.community, ctx.genperm});
    }
  }
  return table;
}

double eq_modularity(const Graph& g, const Cover& cover) {
  require_universe(g, cover);
  if (g.edge_count() == 0) throw std::domain_error("EQ undefined on a graph without edges");
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  double total = 0.0;
  for (const auto& members : cover.communities()) {
    double adjacency = 0.0;
    double degree_mass = 0.0;
    for (const NodeId u : members) {
      const double ou = static_cast<double>(cover.memberships(u).size());
      degree_mass += static_cast<double>(g.degree(u)) / ou;
      for (const NodeId w : g.neighbors(u)) {
        if (std::binary_search(members.begin(), members.end(), w)) {
          adjacency += 1.0 / (ou * static_cast<double>(cover.memberships(w).size()));
        }
      }
    }
    total += adjacency - degree_mass * degree_mass / two_m;
  }
  return total / two_m;
}

double qov_modularity(const Graph& g, const Cover& cover) {
  require_universe(g, cover);
  if (cover.community_count() == 0) return 0.0;
  double total = 0.0;
  for (const auto& members : cover.communities()) {
    const std::size_t n_c = members.size();
    if (n_c < 2) continue;
    double node_terms = 0.0;
    std::size_t internal_twice = 0;
    for (const NodeId i : members) {
      const std::size_t d = g.degree(i);
      if (d == 0) {
        throw std::domain_error("Q_ov undefined: isolated node " + std::to_string(i) +
                                " inside a community");
      }
      const std::size_t in = intersection_size(g.neighbors(i), members);
      internal_twice += in;
      const double s = static_cast<double>(cover.memberships(i).size());
      node_terms += (static_cast<double>(in) - static_cast<double>(d - in)) /
                    (static_cast<double>(d) * s);
    }
    const double pairs = 0.5 * static_cast<double>(n_c) * static_cast<double>(n_c - 1);
    const double density = static_cast<double>(internal_twice / 2) / pairs;
    total += node_terms / static_cast<double>(n_c) * density;
  }
  return total / static_cast<double>(cover.community_count());
}

double community_coverage(const Cover& cover) {
  if (cover.node_count() == 0) return 0.0;
  std::size_t covered = 0;
  for (NodeId v = 0; v < cover.node_count(); ++v) {
    const auto m = cover.memberships(v);
    if (std::any_of(m.begin(), m.end(),
                    [&](CommunityId c) { return cover.members(c).size() >= 3; })) {
      ++covered;
    }
  }
  return static_cast<double>(covered) / static_cast<double>(cover.node_count());
}

double overlap_coverage(const Cover& cover) {
  if (cover.node_count() == 0) return 0.0;
  std::size_t memberships = 0;
  for (const auto& members : cover.communities()) {
    if (members.size() >= 3) memberships += members.size();
  }
  return static_cast<double>(memberships) / static_cast<double>(cover.node_count());
}

ScoreSet score_all(const Graph& g, const Cover& cover) {
  return {genperm_network(g, cover), eq_modularity(g, cover), qov_modularity(g, cover),
          community_coverage(cover), overlap_coverage(cover)};
}

}  // namespace genperm
