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

#include "kcrag/stats.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "kcrag/error.hpp"

namespace kcrag {

std::string LevelSelector::tag() const {
  switch (kind) {
    case Kind::kLeaf:
      return "LF";
    case Kind::kL1:
      return "L1";
    case Kind::kExplicit:
      return "level " + std::to_string(level);
  }
  return "?";
}

std::optional<LevelSelector> level_selector_from_string(std::string_view s) {
  if (s == "lf" || s == "LF") return LevelSelector::leaf();
  if (s == "l1" || s == "L1") return LevelSelector::l1();
  std::uint32_t level = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), level);
  if (ec == std::errc() && ptr == s.data() + s.size() && level > 0) {
    return LevelSelector::exact(level);
  }
  return std::nullopt;
}

std::vector<ClusterId> select_level(const Hierarchy& h, LevelSelector sel) {
  std::set<ClusterId> out;
  for (const auto& c : h.clusters) {
    switch (sel.kind) {
      case LevelSelector::Kind::kLeaf:
        if (c.is_leaf()) out.insert(c.id);
        break;
      case LevelSelector::Kind::kL1:
        if (c.is_leaf() && c.parent) out.insert(*c.parent);
        break;
      case LevelSelector::Kind::kExplicit:
        if (c.level == sel.level) out.insert(c.id);
        break;
    }
  }
  return {out.begin(), out.end()};
}

CommunityStats community_stats(const Hierarchy& h, LevelSelector sel,
                               const Graph& g, const SampleResult* sample) {
  std::uint64_t total = 0;
  for (const auto& m : g.metas()) total += m.token_count;
  if (total == 0) {
    throw InputError("coverage is undefined: the graph carries zero tokens");
  }

  CommunityStats stats;
  stats.level_tag = sel.tag();
  const auto ids = select_level(h, sel);
  stats.num_communities = ids.size();

  std::vector<std::uint8_t> covered(g.num_nodes(), 0);
  for (ClusterId id : ids) {
    const Cluster& c = *h.find(id);
    ++stats.size_histogram[c.members.size()];
    for (NodeId v : c.members) covered[v] = 1;
  }
  auto pct = [&](const std::vector<std::uint8_t>& mask) {
    std::uint64_t tokens = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (mask[v]) tokens += g.meta(v).token_count;
    }
    return 100.0 * static_cast<double>(tokens) / static_cast<double>(total);
  };
  stats.coverage_pct_nodes = pct(covered);

  if (sample != nullptr) {
    std::vector<std::vector<ClusterId>> holders(g.num_nodes());
    for (ClusterId id : ids) {
      for (NodeId v : h.find(id)->members) holders[v].push_back(id);
    }
    std::vector<std::uint8_t> sampled(g.num_nodes(), 0);
    for (const auto& se : sample->selected) {
      const auto [u, v] = se.edge;
      const auto& hu = holders[u];
      const auto& hv = holders[v];
      const bool shared = std::any_of(hu.begin(), hu.end(), [&hv](ClusterId c) {
        return std::binary_search(hv.begin(), hv.end(), c);
      });
      if (shared) sampled[u] = sampled[v] = 1;
    }
    stats.coverage_pct_sampled = pct(sampled);
  }
  return stats;
}

}  // namespace kcrag
