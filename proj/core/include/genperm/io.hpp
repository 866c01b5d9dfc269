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

#ifndef GENPERM_IO_HPP_
#define GENPERM_IO_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "genperm/cover.hpp"
#include "genperm/graph.hpp"

namespace genperm::io {

// Text formats.
//
// Edge list: one edge per line, two whitespace-separated integer ids.
// Lines starting with '#' and blank lines are skipped. Both (u,v) and
// (v,u) may appear (LFR network.dat emits both directions).
//
// Community list ("format A"): one community per line, whitespace
// separated node ids.
//
// Membership ("format B", LFR community.dat): `node<TAB>label label ...`.
// Labels are arbitrary integers naming communities.
//
// Parse errors throw std::runtime_error naming the offending line.

enum class CoverFormat { kAuto, kCommunityList, kMembership };

struct ReadOptions {
  /// Input ids start at 1 and are shifted down on read (and up on write).
  bool one_indexed = false;
};

BuiltGraph read_edge_list(std::istream& in, const ReadOptions& opts = {},
                          std::optional<std::size_t> node_count_hint = std::nullopt);
BuiltGraph read_edge_list_file(const std::string& path, const ReadOptions& opts = {},
                               std::optional<std::size_t> node_count_hint = std::nullopt);

void write_edge_list(std::ostream& out, const Graph& g, const ReadOptions& opts = {});

/// Membership when every data line has a TAB after a single leading id and
/// the leading ids are distinct; community list otherwise.
CoverFormat detect_cover_format(const std::string& text);

/// Raw communities as written in the file (ids already shifted).
std::vector<std::vector<NodeId>> parse_communities(std::istream& in, CoverFormat format,
                                                   const ReadOptions& opts = {});

Cover read_cover(std::istream& in, std::size_t node_count,
                 CoverFormat format = CoverFormat::kAuto, const ReadOptions& opts = {});
Cover read_cover_file(const std::string& path, std::size_t node_count,
                      CoverFormat format = CoverFormat::kAuto,
                      const ReadOptions& opts = {});

/// Largest node id mentioned + 1 (0 when empty).
std::size_t max_node_bound(const std::vector<std::vector<NodeId>>& communities);

/// Format A, communities in canonical order, ids space separated.
void write_cover(std::ostream& out, const Cover& cover, const ReadOptions& opts = {});
/// Format B, labels are community indices.
void write_membership(std::ostream& out, const Cover& cover, const ReadOptions& opts = {});

struct LfrInstance {
  BuiltGraph network;
  Cover truth;
};

/// Reads an LFR benchmark output pair (network.dat, community.dat), both
/// 1-based.
LfrInstance read_lfr(const std::string& network_path, const std::string& community_path);

}  // namespace genperm::io

#endif  // GENPERM_IO_HPP_
