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

#include "genperm/cover.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace genperm {

Cover Cover::build(std::size_t node_count,
                   std::vector<std::vector<NodeId>> communities) {
  Cover cover;
  std::vector<bool> covered(node_count, false);
  std::erase_if(communities, [](const auto& c) { return c.empty(); });
  for (auto& members : communities) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (members.back() >= node_count) {
      throw std::invalid_argument("cover: node id " + std::to_string(members.back()) +
                                  " out of range for " + std::to_string(node_count) +
                                  " nodes");
    }
    for (const NodeId v : members) covered[v] = true;
  }
  for (NodeId v = 0; v < node_count; ++v) {
    if (!covered[v]) {
      communities.push_back({v});
      ++cover.implicit_singletons_;
    }
  }
  std::sort(communities.begin(), communities.end());
  const auto last = std::unique(communities.begin(), communities.end());
  cover.duplicates_collapsed_ = static_cast<std::size_t>(communities.end() - last);
  communities.erase(last, communities.end());

  if (communities.size() >= kInvalidCommunity) {
    throw std::overflow_error("cover: too many communities");
  }
  cover.explicit_ = std::move(covered);
  cover.communities_ = std::move(communities);
  cover.membership_.assign(node_count, {});
  for (CommunityId c = 0; c < cover.communities_.size(); ++c) {
    for (const NodeId v : cover.communities_[c]) cover.membership_[v].push_back(c);
  }
  return cover;
}

bool Cover::contains(CommunityId c, NodeId v) const {
  const auto& m = membership_[v];
  return std::binary_search(m.begin(), m.end(), c);
}

std::size_t Cover::shared_count(NodeId u, NodeId v) const {
  const auto& a = membership_[u];
  const auto& b = membership_[v];
  std::size_t count = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
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

bool Cover::is_disjoint() const {
  return std::all_of(membership_.begin(), membership_.end(),
                     [](const auto& m) { return m.size() == 1; });
}

Cover build_cover(const Graph& g, std::vector<std::vector<NodeId>> communities) {
  return Cover::build(g.node_count(), std::move(communities));
}

namespace {

void require_same_universe(const Graph& g, const Cover& cover) {
  if (g.node_count() != cover.node_count()) {
    throw std::invalid_argument("cover has " + std::to_string(cover.node_count()) +
                                " nodes but graph has " + std::to_string(g.node_count()));
  }
}

}  // namespace

std::vector<std::size_t> edge_sharing(const Graph& g, const Cover& cover) {
  require_same_universe(g, cover);
  std::vector<std::size_t> x(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    x[e] = cover.shared_count(u, v);
  }
  return x;
}

std::size_t max_edge_sharing(const Graph& g, const Cover& cover) {
  const auto x = edge_sharing(g, cover);
  return x.empty() ? 0 : *std::max_element(x.begin(), x.end());
}

CommunityStats community_stats(const Graph& g, const Cover& cover, CommunityId c) {
  require_same_universe(g, cover);
  if (c >= cover.community_count()) {
    throw std::invalid_argument("community_stats: community id out of range");
  }
  const auto members = cover.members(c);
  CommunityStats stats;
  stats.nodes = members.size();
  for (const NodeId u : members) {
    for (const NodeId w : g.neighbors(u)) {
      if (w > u && std::binary_search(members.begin(), members.end(), w)) ++stats.edges;
    }
  }
  if (stats.nodes >= 2) {
    const double pairs = 0.5 * static_cast<double>(stats.nodes) *
                         static_cast<double>(stats.nodes - 1);
    stats.density = static_cast<double>(stats.edges) / pairs;
  }
  return stats;
}

Cover restrict_cover(const Cover& cover, const Subgraph& sub) {
  if (sub.from_original.size() != cover.node_count()) {
    throw std::invalid_argument("restrict_cover: subgraph built from a different universe");
  }
  std::vector<std::vector<NodeId>> restricted;
  for (const auto& members : cover.communities()) {
    std::vector<NodeId> kept;
    for (const NodeId v : members) {
      if (sub.from_original[v] != kInvalidNode) kept.push_back(sub.from_original[v]);
    }
    if (!kept.empty()) restricted.push_back(std::move(kept));
  }
  return Cover::build(sub.to_original.size(), std::move(restricted));
}

}  // namespace genperm
