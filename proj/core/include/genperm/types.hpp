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

#ifndef GENPERM_TYPES_HPP_
#define GENPERM_TYPES_HPP_

#include <cstdint>
#include <limits>
#include <utility>

namespace genperm {

using NodeId = std::uint32_t;
using CommunityId = std::uint32_t;
using EdgeId = std::uint32_t;

inline constexpr NodeId kInvalidNode = std::numeric_limits<NodeId>::max();
inline constexpr CommunityId kInvalidCommunity =
    std::numeric_limits<CommunityId>::max();

/// Undirected edge with `first < second` once stored in a Graph.
using Edge = std::pair<NodeId, NodeId>;

}  // namespace genperm

#endif  // GENPERM_TYPES_HPP_
