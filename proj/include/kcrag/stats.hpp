// Copyright 2026 The kcrag Authors.
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

#ifndef KCRAG_STATS_HPP_
#define KCRAG_STATS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kcrag/graph.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/token_sampling.hpp"

namespace kcrag {

// LF: leaf clusters. L1: distinct parents of leaves. Explicit: clusters whose
// level equals the given value.
struct LevelSelector {
  enum class Kind { kLeaf, kL1, kExplicit };
  Kind kind = Kind::kLeaf;
  std::uint32_t level = 0;

  static LevelSelector leaf() { return {Kind::kLeaf, 0}; }
  static LevelSelector l1() { return {Kind::kL1, 0}; }
  static LevelSelector exact(std::uint32_t level) {
    return {Kind::kExplicit, level};
  }
  std::string tag() const;
};

// Parses "lf", "l1" or a positive integer level.
std::optional<LevelSelector> level_selector_from_string(std::string_view s);

// Cluster ids, ascending.
std::vector<ClusterId> select_level(const Hierarchy& h, LevelSelector sel);

struct CommunityStats {
  std::string level_tag;
  std::size_t num_communities = 0;
  // Share of all node tokens held by nodes inside the selected clusters.
  double coverage_pct_nodes = 0.0;
  // Share of all node tokens held by endpoints of sampled edges lying inside
  // a selected cluster; absent without a sample.
  std::optional<double> coverage_pct_sampled;
  std::map<std::size_t, std::size_t> size_histogram;  // size -> count
};

// Throws InputError when the graph carries zero tokens in total.
CommunityStats community_stats(const Hierarchy& h, LevelSelector sel,
                               const Graph& g,
                               const SampleResult* sample = nullptr);

}  // namespace kcrag

#endif  // KCRAG_STATS_HPP_
