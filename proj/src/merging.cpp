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

#include "kcrag/merging.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kcrag {

std::string_view to_string(MergeMode mode) {
  return mode == MergeMode::kTwoHopOnly ? "m2hc" : "mrc";
}

std::optional<MergeMode> merge_mode_from_string(std::string_view s) {
  if (s == "m2hc") return MergeMode::kTwoHopOnly;
  if (s == "mrc") return MergeMode::kResidualAndTwoHop;
  return std::nullopt;
}

bool is_merge_eligible(const Cluster& c, MergeMode mode) {
  if (!c.is_leaf() || c.members.size() != 2) return false;
  if (c.kind == ClusterKind::kTwoHop) return true;
  return mode == MergeMode::kResidualAndTwoHop &&
         c.kind == ClusterKind::kResidual;
}

MergeResult merge_small_clusters(const Graph& g, const Hierarchy& h,
                                 MergeMode mode) {
  MergeResult result{h, MergeReport{mode, {}, {}, {}}};
  Hierarchy& out = result.hierarchy;
  const std::size_t n = g.num_nodes();

  std::vector<std::vector<ClusterId>> hosts_of(n);   // host clusters per node
  std::vector<std::vector<ClusterId>> smalls_of(n);  // pending small clusters
  std::vector<ClusterId> smalls;
  for (const auto& c : out.clusters) {
    if (!c.is_leaf()) continue;
    if (is_merge_eligible(c, mode)) {
      smalls.push_back(c.id);
      for (NodeId v : c.members) smalls_of[v].push_back(c.id);
    } else {
      for (NodeId v : c.members) hosts_of[v].push_back(c.id);
    }
  }
  if (smalls.empty()) return result;

  // score = edges from the small cluster to nodes covered by some host.
  std::map<ClusterId, std::size_t> score;
  auto outside = [](const Cluster& c, NodeId w) {
    return !std::binary_search(c.members.begin(), c.members.end(), w);
  };
  for (ClusterId id : smalls) {
    const Cluster& c = *out.find(id);
    std::size_t s = 0;
    for (NodeId x : c.members) {
      for (NodeId w : g.neighbors(x)) {
        if (outside(c, w) && !hosts_of[w].empty()) ++s;
      }
    }
    score[id] = s;
  }
  std::set<std::pair<std::int64_t, ClusterId>> pending;
  for (const auto& [id, s] : score) {
    pending.insert({-static_cast<std::int64_t>(s), id});
  }

  std::vector<ClusterId> removed;
  std::map<ClusterId, std::size_t> edges_to;
  while (!pending.empty()) {
    const ClusterId small_id = pending.begin()->second;
    pending.erase(pending.begin());
    const Cluster small = *out.find(small_id);
    for (NodeId v : small.members) {
      auto& list = smalls_of[v];
      list.erase(std::remove(list.begin(), list.end(), small_id), list.end());
    }

    edges_to.clear();
    for (NodeId x : small.members) {
      for (NodeId w : g.neighbors(x)) {
        if (!outside(small, w)) continue;
        for (ClusterId host : hosts_of[w]) ++edges_to[host];
      }
    }

    ClusterId target = small_id;
    if (!edges_to.empty()) {
      auto best = edges_to.begin();
      for (auto it = edges_to.begin(); it != edges_to.end(); ++it) {
        if (it->second > best->second) best = it;
      }
      target = best->first;
      Cluster& host = *out.find(target);
      NodeSet merged;
      std::set_union(host.members.begin(), host.members.end(),
                     small.members.begin(), small.members.end(),
                     std::back_inserter(merged));
      host.members = std::move(merged);
      removed.push_back(small_id);
      result.report.merged.emplace_back(small_id, target);
      for (auto& [node, cid] : out.attached_singletons) {
        if (cid == small_id) cid = target;
      }
    } else {
      result.report.promoted.push_back(small_id);
    }

    for (NodeId x : small.members) {
      const bool newly_covered = hosts_of[x].empty();
      if (std::find(hosts_of[x].begin(), hosts_of[x].end(), target) ==
          hosts_of[x].end()) {
        hosts_of[x].push_back(target);
      }
      if (!newly_covered) continue;
      for (NodeId w : g.neighbors(x)) {
        for (ClusterId t : smalls_of[w]) {
          const Cluster& tc = *out.find(t);
          if (!outside(tc, x)) continue;
          pending.erase({-static_cast<std::int64_t>(score[t]), t});
          ++score[t];
          pending.insert({-static_cast<std::int64_t>(score[t]), t});
        }
      }
    }
  }

  std::sort(removed.begin(), removed.end());
  std::erase_if(out.clusters, [&removed](const Cluster& c) {
    return std::binary_search(removed.begin(), removed.end(), c.id);
  });
  out.relink();

  // An inner cluster whose children were all merged away would turn back
  // into a leaf and cover its nodes a second time; drop it instead.
  for (bool again = true; again;) {
    again = false;
    std::vector<ClusterId> emptied;
    for (const auto& c : out.clusters) {
      if (c.is_leaf() && !h.find(c.id)->is_leaf()) emptied.push_back(c.id);
    }
    if (emptied.empty()) break;
    again = true;
    result.report.dissolved.insert(result.report.dissolved.end(),
                                   emptied.begin(), emptied.end());
    std::erase_if(out.clusters, [&emptied](const Cluster& c) {
      return std::binary_search(emptied.begin(), emptied.end(), c.id);
    });
    out.relink();
  }
  std::sort(result.report.dissolved.begin(), result.report.dissolved.end());
  return result;
}

}  // namespace kcrag
