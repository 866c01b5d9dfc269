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

#include "genperm/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace genperm::io {
namespace {

bool is_skippable(std::string_view line) {
  const auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

[[noreturn]] void parse_error(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("line " + std::to_string(line_no) + ": " + what);
}

/// Splits on spaces/tabs and parses nonnegative integers.
std::vector<std::uint64_t> parse_ids(std::string_view line, std::size_t line_no) {
  std::vector<std::uint64_t> ids;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec == std::errc::result_out_of_range) {
      parse_error(line_no, "id overflows 64 bits");
    }
    if (ec != std::errc() || ptr != line.data() + j) {
      parse_error(line_no, "expected a nonnegative integer, got '" +
                               std::string(line.substr(i, j - i)) + "'");
    }
    ids.push_back(value);
    i = j;
  }
  return ids;
}

std::uint64_t shift(std::uint64_t id, const ReadOptions& opts, std::size_t line_no) {
  if (!opts.one_indexed) return id;
  if (id == 0) parse_error(line_no, "id 0 in a one-indexed file");
  return id - 1;
}

NodeId narrow(std::uint64_t id, std::size_t line_no) {
  if (id >= kInvalidNode) parse_error(line_no, "node id exceeds NodeId width");
  return static_cast<NodeId>(id);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

std::string slurp(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

BuiltGraph read_edge_list(std::istream& in, const ReadOptions& opts,
                          std::optional<std::size_t> node_count_hint) {
  std::vector<RawEdge> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto ids = parse_ids(line, line_no);
    if (ids.size() != 2) parse_error(line_no, "expected exactly two ids");
    pairs.emplace_back(shift(ids[0], opts, line_no), shift(ids[1], opts, line_no));
  }
  return build_graph(std::span<const RawEdge>(pairs), node_count_hint);
}

BuiltGraph read_edge_list_file(const std::string& path, const ReadOptions& opts,
                               std::optional<std::size_t> node_count_hint) {
  auto in = open_or_throw(path);
  return read_edge_list(in, opts, node_count_hint);
}

void write_edge_list(std::ostream& out, const Graph& g, const ReadOptions& opts) {
  const NodeId offset = opts.one_indexed ? 1 : 0;
  for (const auto& [u, v] : g.edges()) out << u + offset << ' ' << v + offset << '\n';
}

CoverFormat detect_cover_format(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::unordered_set<std::string> heads;
  bool any = false;
  while (std::getline(in, line)) {
    if (is_skippable(line)) continue;
    any = true;
    const auto start = line.find_first_not_of(' ');
    const auto tab = line.find('\t', start);
    if (tab == std::string::npos) return CoverFormat::kCommunityList;
    const auto head = line.substr(start, tab - start);
    if (head.empty() || head.find(' ') != std::string::npos) {
      return CoverFormat::kCommunityList;
    }
    if (!heads.insert(head).second) return CoverFormat::kCommunityList;
  }
  return any ? CoverFormat::kMembership : CoverFormat::kCommunityList;
}

std::vector<std::vector<NodeId>> parse_communities(std::istream& in, CoverFormat format,
                                                   const ReadOptions& opts) {
  std::string text = slurp(in);
  if (format == CoverFormat::kAuto) format = detect_cover_format(text);
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<NodeId>> communities;
  std::map<std::uint64_t, std::vector<NodeId>> by_label;
  while (std::getline(lines, line)) {
    ++line_no;
    if (is_skippable(line)) continue;
    const auto ids = parse_ids(line, line_no);
    if (format == CoverFormat::kCommunityList) {
      std::vector<NodeId> members;
      members.reserve(ids.size());
      for (const auto id : ids) members.push_back(narrow(shift(id, opts, line_no), line_no));
      communities.push_back(std::move(members));
    } else {
      const NodeId node = narrow(shift(ids[0], opts, line_no), line_no);
      for (std::size_t k = 1; k < ids.size(); ++k) by_label[ids[k]].push_back(node);
    }
  }
  if (format == CoverFormat::kMembership) {
    for (auto& [label, members] : by_label) communities.push_back(std::move(members));
  }
  return communities;
}

std::size_t max_node_bound(const std::vector<std::vector<NodeId>>& communities) {
  std::size_t bound = 0;
  for (const auto& c : communities) {
    for (const NodeId v : c) bound = std::max<std::size_t>(bound, std::size_t{v} + 1);
  }
  return bound;
}

Cover read_cover(std::istream& in, std::size_t node_count, CoverFormat format,
                 const ReadOptions& opts) {
  return Cover::build(node_count, parse_communities(in, format, opts));
}

Cover read_cover_file(const std::string& path, std::size_t node_count, CoverFormat format,
                      const ReadOptions& opts) {
  auto in = open_or_throw(path);
  return read_cover(in, node_count, format, opts);
}

void write_cover(std::ostream& out, const Cover& cover, const ReadOptions& opts) {
  const NodeId offset = opts.one_indexed ? 1 : 0;
  for (const auto& members : cover.communities()) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) out << ' ';
      out << members[i] + offset;
    }
    out << '\n';
  }
}

void write_membership(std::ostream& out, const Cover& cover, const ReadOptions& opts) {
  const NodeId offset = opts.one_indexed ? 1 : 0;
  for (NodeId v = 0; v < cover.node_count(); ++v) {
    out << v + offset << '\t';
    const auto m = cover.memberships(v);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) out << ' ';
      out << m[i] + offset;
    }
    out << '\n';
  }
}

LfrInstance read_lfr(const std::string& network_path, const std::string& community_path) {
  const ReadOptions one_based{.one_indexed = true};
  auto network = read_edge_list_file(network_path, one_based);
  auto in = open_or_throw(community_path);
  auto communities = parse_communities(in, CoverFormat::kMembership, one_based);
  const std::size_t n = std::max(network.graph.node_count(), max_node_bound(communities));
  if (n > network.graph.node_count()) {
    // Trailing isolated nodes only appear in community.dat.
    std::vector<Edge> edges(network.graph.edges().begin(), network.graph.edges().end());
    auto report = network.report;
    network = build_graph(std::span<const Edge>(edges), n);
    network.report = report;
  }
  return {std::move(network), Cover::build(n, std::move(communities))};
}

}  // namespace genperm::io
