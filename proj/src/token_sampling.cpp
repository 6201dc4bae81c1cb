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

#include "kcrag/token_sampling.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <tuple>

#include "kcrag/error.hpp"

namespace kcrag {

std::size_t derive_max_cluster_size(std::uint64_t token_limit, const Graph& g) {
  if (token_limit == 0) throw ConfigError("token limit must be positive");
  if (g.empty()) throw InputError("empty input: graph has no nodes");
  std::uint64_t total = 0;
  for (const auto& m : g.metas()) total += m.token_count;
  if (total == 0) {
    throw ConfigError(
        "cannot derive max cluster size: every node has zero tokens");
  }
  // floor(limit / (total / n)) == floor(limit * n / total), kept integral.
  __extension__ using u128 = unsigned __int128;
  const auto n = static_cast<u128>(g.num_nodes());
  const auto m =
      static_cast<std::size_t>((static_cast<u128>(token_limit) * n) / total);
  return std::max<std::size_t>(2, m);
}

namespace {

Edge ordered(NodeId u, NodeId v) { return u < v ? Edge{u, v} : Edge{v, u}; }

}  // namespace

void EdgeCosts::set(NodeId u, NodeId v, std::uint64_t cost) {
  const Edge key = ordered(u, v);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const auto& entry, const Edge& k) { return entry.first < k; });
  if (it != entries_.end() && it->first == key) {
    it->second = cost;
  } else {
    entries_.insert(it, {key, cost});
  }
}

bool EdgeCosts::contains(NodeId u, NodeId v) const {
  const Edge key = ordered(u, v);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const auto& entry, const Edge& k) { return entry.first < k; });
  return it != entries_.end() && it->first == key;
}

std::uint64_t EdgeCosts::at(NodeId u, NodeId v) const {
  const Edge key = ordered(u, v);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), key,
      [](const auto& entry, const Edge& k) { return entry.first < k; });
  if (it == entries_.end() || it->first != key) {
    throw InputError("no token cost for edge (" + std::to_string(key.first) +
                     ", " + std::to_string(key.second) + ")");
  }
  return it->second;
}

EdgeCosts default_edge_costs(const Graph& g, std::uint64_t relation_overhead) {
  EdgeCosts costs;
  for (const auto& [u, v] : g.edge_list()) {
    costs.set(u, v,
              g.meta(u).token_count + g.meta(v).token_count + relation_overhead);
  }
  return costs;
}

EdgeCosts read_edge_costs(std::istream& in, const Graph& g, EdgeCosts base,
                          std::string_view source) {
  std::string buf;
  std::size_t line_no = 0;
  while (std::getline(in, buf)) {
    ++line_no;
    std::string_view line = buf;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos ||
        line.front() == '#') {
      continue;
    }
    auto t1 = line.find('\t');
    auto t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos ||
        line.find('\t', t2 + 1) != std::string_view::npos) {
      throw ParseError(std::string(source), line_no,
                       "expected src<TAB>dst<TAB>cost");
    }
    auto src = g.find(line.substr(0, t1));
    auto dst = g.find(line.substr(t1 + 1, t2 - t1 - 1));
    if (!src || !dst) continue;  // outside the preprocessed graph
    if (!g.has_edge(*src, *dst)) {
      throw ParseError(std::string(source), line_no, "edge not in graph");
    }
    auto field = line.substr(t2 + 1);
    std::uint64_t cost = 0;
    auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), cost);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      throw ParseError(std::string(source), line_no,
                       "cost must be a non-negative integer");
    }
    base.set(*src, *dst, cost);
  }
  return base;
}

namespace {

auto rank_key(const Graph& g, const Edge& e) {
  return std::tuple(-static_cast<std::int64_t>(g.degree(e.first) +
                                               g.degree(e.second)),
                    e.first, e.second);
}

}  // namespace

std::vector<RankedCommunity> rank_leaf_edges(const Hierarchy& h,
                                             const Graph& g) {
  std::vector<RankedCommunity> out;
  for (const auto& c : h.clusters) {
    if (c.is_leaf()) out.push_back({c.id, c.level, {}});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankedCommunity& a, const RankedCommunity& b) {
                     return a.level > b.level;
                   });

  const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < count; ++i) {
    RankedCommunity& rc = out[static_cast<std::size_t>(i)];
    const NodeSet& members = h.find(rc.id)->members;
    for (NodeId u : members) {
      for (NodeId v : g.neighbors(u)) {
        if (u < v && std::binary_search(members.begin(), members.end(), v)) {
          rc.edges.emplace_back(u, v);
        }
      }
    }
    std::sort(rc.edges.begin(), rc.edges.end(),
              [&g](const Edge& a, const Edge& b) {
                return rank_key(g, a) < rank_key(g, b);
              });
  }
  return out;
}

SampleResult rrtc_sample(std::span<const RankedCommunity> ranked,
                         const EdgeCosts& costs, std::uint64_t budget) {
  SampleResult result;
  result.budget = budget;
  result.outcomes.reserve(ranked.size());
  for (const auto& rc : ranked) {
    result.outcomes.push_back({rc.id, rc.edges.size(), 0,
                               RetireReason::kExhausted});
  }

  std::vector<std::size_t> active(ranked.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;
  while (!active.empty()) {
    std::vector<std::size_t> still;
    for (std::size_t i : active) {
      CommunityOutcome& oc = result.outcomes[i];
      const auto& edges = ranked[i].edges;
      if (oc.selected == edges.size()) {
        oc.reason = RetireReason::kExhausted;
        result.retired.push_back(oc.id);
        continue;
      }
      const Edge e = edges[oc.selected];
      const std::uint64_t cost = costs.at(e.first, e.second);
      if (cost > result.remaining()) {
        oc.reason = RetireReason::kUnaffordable;
        result.retired.push_back(oc.id);
        continue;
      }
      result.selected.push_back({e, oc.id, cost});
      result.total_tokens += cost;
      ++oc.selected;
      still.push_back(i);
    }
    active = std::move(still);
  }
  return result;
}

SampleResult rrtc_sample(const Hierarchy& h, const Graph& g,
                         const EdgeCosts& costs, std::uint64_t budget) {
  const auto ranked = rank_leaf_edges(h, g);
  return rrtc_sample(ranked, costs, budget);
}

std::uint64_t budget_for_edge_fraction(std::span<const RankedCommunity> ranked,
                                       const Graph& g, const EdgeCosts& costs,
                                       double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("edge fraction must be in (0, 1]");
  }
  struct Entry {
    std::tuple<std::int64_t, NodeId, NodeId> key;
    std::size_t community;
    std::uint64_t cost;
  };
  std::vector<Entry> all;
  for (std::size_t c = 0; c < ranked.size(); ++c) {
    for (const Edge& e : ranked[c].edges) {
      all.push_back({rank_key(g, e), c, costs.at(e.first, e.second)});
    }
  }
  std::sort(all.begin(), all.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.key, a.community) < std::tie(b.key, b.community);
  });
  const auto take = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(all.size()) + 1e-9));
  std::uint64_t budget = 0;
  for (std::size_t i = 0; i < take; ++i) budget += all[i].cost;
  return budget;
}

}  // namespace kcrag
