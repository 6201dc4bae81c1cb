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

#include "kcrag/hierarchy.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

#include "kcrag/error.hpp"

namespace kcrag {

std::string_view to_string(ClusterKind kind) {
  switch (kind) {
    case ClusterKind::kRoot:
      return "root";
    case ClusterKind::kCore:
      return "core";
    case ClusterKind::kResidual:
      return "residual";
    case ClusterKind::kTwoHop:
      return "two_hop";
  }
  return "unknown";
}

std::optional<ClusterKind> cluster_kind_from_string(std::string_view s) {
  for (auto k : {ClusterKind::kRoot, ClusterKind::kCore, ClusterKind::kResidual,
                 ClusterKind::kTwoHop}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

const Cluster* Hierarchy::find(ClusterId id) const {
  auto it = std::lower_bound(
      clusters.begin(), clusters.end(), id,
      [](const Cluster& c, ClusterId key) { return c.id < key; });
  return (it != clusters.end() && it->id == id) ? &*it : nullptr;
}

Cluster* Hierarchy::find(ClusterId id) {
  return const_cast<Cluster*>(std::as_const(*this).find(id));
}

std::vector<ClusterId> Hierarchy::leaf_ids() const {
  std::vector<ClusterId> out;
  for (const auto& c : clusters) {
    if (c.is_leaf()) out.push_back(c.id);
  }
  return out;
}

NodeSet Hierarchy::structural_members(const Cluster& c) const {
  NodeSet out;
  out.reserve(c.members.size());
  for (NodeId v : c.members) {
    auto it = attached_singletons.find(v);
    if (it == attached_singletons.end() || it->second != c.id) out.push_back(v);
  }
  return out;
}

NodeSet Hierarchy::own_members(const Cluster& c) const {
  NodeSet structural = structural_members(c);
  NodeSet out;
  std::set_difference(structural.begin(), structural.end(), c.anchors.begin(),
                      c.anchors.end(), std::back_inserter(out));
  return out;
}

void Hierarchy::relink() {
  roots.clear();
  for (auto& c : clusters) c.children.clear();
  max_level = 0;
  for (auto& c : clusters) {
    max_level = std::max(max_level, c.level);
    if (!c.parent) {
      roots.push_back(c.id);
    } else if (Cluster* p = find(*c.parent)) {
      p->children.push_back(c.id);
    }
  }
}

namespace {

// Reusable marks for repeated subset queries on one graph.
class SubsetScratch {
 public:
  explicit SubsetScratch(std::size_t n) : in_set_(n, 0), seen_(n, 0) {}

  // Components of G[nodes], each sorted, ordered by smallest member.
  std::vector<NodeSet> components(const Graph& g,
                                  std::span<const NodeId> nodes) {
    ++stamp_;
    for (NodeId v : nodes) in_set_[v] = stamp_;
    std::vector<NodeSet> out;
    std::vector<NodeId> stack;
    for (NodeId s : nodes) {
      if (seen_[s] == stamp_) continue;
      NodeSet comp;
      seen_[s] = stamp_;
      stack.push_back(s);
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (NodeId v : g.neighbors(u)) {
          if (in_set_[v] == stamp_ && seen_[v] != stamp_) {
            seen_[v] = stamp_;
            stack.push_back(v);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(),
              [](const NodeSet& a, const NodeSet& b) { return a[0] < b[0]; });
    return out;
  }

 private:
  std::vector<std::uint32_t> in_set_;
  std::vector<std::uint32_t> seen_;
  std::uint32_t stamp_ = 0;
};

// Max-gain frontier with smallest-id tie-break.
class Frontier {
 public:
  explicit Frontier(std::size_t n) : gain_(n, 0), present_(n, 0) {}

  void bump(NodeId v, std::uint64_t by = 1) {
    if (present_[v]) order_.erase({-static_cast<std::int64_t>(gain_[v]), v});
    present_[v] = 1;
    gain_[v] += by;
    order_.insert({-static_cast<std::int64_t>(gain_[v]), v});
  }

  void erase(NodeId v) {
    if (!present_[v]) return;
    order_.erase({-static_cast<std::int64_t>(gain_[v]), v});
    present_[v] = 0;
    gain_[v] = 0;
  }

  bool empty() const { return order_.empty(); }
  NodeId top() const { return order_.begin()->second; }

  void clear() {
    for (const auto& [g, v] : order_) {
      present_[v] = 0;
      gain_[v] = 0;
    }
    order_.clear();
  }

 private:
  std::vector<std::uint64_t> gain_;
  std::vector<std::uint8_t> present_;
  std::set<std::pair<std::int64_t, NodeId>> order_;
};

}  // namespace

std::vector<NodeSet> split_component(const Graph& g, std::span<const NodeId> r,
                                     std::size_t max_size) {
  NodeSet remaining_nodes(r.begin(), r.end());
  std::sort(remaining_nodes.begin(), remaining_nodes.end());
  if (remaining_nodes.size() <= max_size) return {remaining_nodes};

  std::vector<std::uint8_t> in_r(g.num_nodes(), 0);
  for (NodeId v : remaining_nodes) in_r[v] = 1;

  NodeSet seeds = remaining_nodes;
  std::stable_sort(seeds.begin(), seeds.end(), [&g](NodeId a, NodeId b) {
    return g.degree(a) > g.degree(b);
  });

  Frontier frontier(g.num_nodes());
  std::vector<NodeSet> out;
  std::size_t left = remaining_nodes.size();
  std::size_t next_seed = 0;
  auto take = [&](NodeId v, NodeSet& s) {
    in_r[v] = 0;
    --left;
    frontier.erase(v);
    s.push_back(v);
    for (NodeId w : g.neighbors(v)) {
      if (in_r[w]) frontier.bump(w);
    }
  };
  while (left > 0) {
    while (!in_r[seeds[next_seed]]) ++next_seed;
    NodeSet s;
    take(seeds[next_seed], s);
    while (s.size() < max_size && !frontier.empty()) take(frontier.top(), s);
    frontier.clear();
    std::sort(s.begin(), s.end());
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<TwoHopPiece> split_two_hop(const Graph& g,
                                       std::span<const NodeId> h,
                                       std::size_t max_size) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint8_t> in_h(n, 0);
  for (NodeId v : h) in_h[v] = 1;

  // A_u = N(u) \ H.
  auto anchors_of = [&](NodeId u) {
    NodeSet a;
    for (NodeId w : g.neighbors(u)) {
      if (!in_h[w]) a.push_back(w);
    }
    return a;
  };
  std::vector<std::size_t> anchor_count(n, 0);
  for (NodeId u : h) anchor_count[u] = anchors_of(u).size();

  NodeSet seeds(h.begin(), h.end());
  std::sort(seeds.begin(), seeds.end());
  std::stable_sort(seeds.begin(), seeds.end(), [&](NodeId a, NodeId b) {
    return anchor_count[a] > anchor_count[b];
  });

  NodeSet h_sorted(h.begin(), h.end());
  std::sort(h_sorted.begin(), h_sorted.end());
  auto in_h_set = [&](NodeId v) {
    return std::binary_search(h_sorted.begin(), h_sorted.end(), v);
  };

  // in_h doubles as "still unassigned".
  std::vector<std::uint32_t> anchor_hits(n, 0);
  Frontier frontier(n);
  std::vector<TwoHopPiece> out;
  std::size_t left = seeds.size();
  std::size_t next_seed = 0;
  auto take = [&](NodeId v, NodeSet& s) {
    in_h[v] = 0;
    --left;
    frontier.erase(v);
    s.push_back(v);
    // Each anchor shared between v and a candidate u adds one to
    // sum_{x in S} |A_u ∩ A_x|.
    for (NodeId a : g.neighbors(v)) {
      if (in_h_set(a)) continue;
      for (NodeId u : g.neighbors(a)) {
        if (in_h[u]) frontier.bump(u);
      }
    }
  };

  while (left > 0) {
    while (!in_h[seeds[next_seed]]) ++next_seed;
    NodeSet s;
    take(seeds[next_seed], s);
    while (s.size() < max_size && !frontier.empty()) take(frontier.top(), s);
    frontier.clear();

    NodeSet touched;
    for (NodeId u : s) {
      for (NodeId a : g.neighbors(u)) {
        if (in_h_set(a)) continue;
        if (anchor_hits[a]++ == 0) touched.push_back(a);
      }
    }
    TwoHopPiece piece;
    for (NodeId a : touched) {
      if (anchor_hits[a] >= 2) piece.anchors.push_back(a);
      anchor_hits[a] = 0;
    }
    std::sort(piece.anchors.begin(), piece.anchors.end());
    piece.members = s;
    piece.members.insert(piece.members.end(), piece.anchors.begin(),
                         piece.anchors.end());
    std::sort(piece.members.begin(), piece.members.end());
    out.push_back(std::move(piece));
  }
  return out;
}

std::vector<NodeSet> two_hop_groups(const Graph& g,
                                    std::span<const NodeId> pool) {
  const std::size_t n = g.num_nodes();
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> parent(n, kNone);
  for (NodeId v : pool) parent[v] = v;
  auto find = [&parent](NodeId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  };
  // First pool node seen next to each hub; later ones join it.
  std::vector<NodeId> via(n, kNone);
  for (NodeId u : pool) {
    for (NodeId w : g.neighbors(u)) {
      if (parent[w] != kNone) unite(u, w);
      if (via[w] == kNone) {
        via[w] = u;
      } else {
        unite(u, via[w]);
      }
    }
  }
  std::map<NodeId, NodeSet> groups;
  for (NodeId v : pool) groups[find(v)].push_back(v);
  std::vector<NodeSet> out;
  for (auto& [root, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const NodeSet& a, const NodeSet& b) { return a[0] < b[0]; });
  return out;
}

namespace {

constexpr ClusterId kNoCluster = static_cast<ClusterId>(-1);

class HierarchyBuilder {
 public:
  HierarchyBuilder(const Graph& g, const CoreDecomposition& cores,
                   std::size_t max_size)
      : g_(g),
        cores_(cores),
        max_size_(max_size),
        scratch_(g.num_nodes()),
        owner_(g.num_nodes(), kNoCluster) {}

  Hierarchy run() {
    h_.max_cluster_size = max_size_;
    const std::size_t n = g_.num_nodes();
    if (n == 1) {
      add_cluster(1, ClusterKind::kRoot, std::nullopt, {0}, {});
      h_.relink();
      return std::move(h_);
    }

    struct Entry {
      ClusterId id;  // kNoCluster for the whole vertex set at level 1
      NodeSet nodes;
    };
    NodeSet all(n);
    std::iota(all.begin(), all.end(), NodeId{0});
    std::vector<Entry> queue{{kNoCluster, std::move(all)}};

    for (std::uint32_t level = 1; level <= cores_.max_core; ++level) {
      std::vector<Entry> next;
      NodeSet pool;
      for (Entry& s : queue) {
        NodeSet core_part, residual_part;
        for (NodeId v : s.nodes) {
          (cores_.core[v] >= level ? core_part : residual_part).push_back(v);
        }
        const std::optional<ClusterId> parent =
            s.id == kNoCluster ? std::nullopt : std::optional(s.id);

        auto core_comps = scratch_.components(g_, core_part);
        if (parent && core_comps.size() == 1 &&
            core_comps[0].size() == s.nodes.size()) {
          // Same membership one level deeper: keep one cluster.
          h_.find(s.id)->level = level;
          next.push_back(std::move(s));
          continue;
        }
        if (parent && residual_part.size() == s.nodes.size() &&
            scratch_.components(g_, residual_part).size() == 1) {
          continue;  // S itself is the leaf
        }

        const ClusterKind core_kind =
            parent ? ClusterKind::kCore : ClusterKind::kRoot;
        for (const NodeSet& comp : core_comps) {
          for (NodeSet& piece : split_component(g_, comp, max_size_)) {
            if (piece.size() == 1) {
              pool.push_back(piece[0]);
              continue;
            }
            ClusterId id = add_cluster(level, core_kind, parent, piece, {});
            for (NodeId v : piece) owner_[v] = id;
            next.push_back({id, std::move(piece)});
          }
        }
        for (const NodeSet& comp : scratch_.components(g_, residual_part)) {
          for (NodeSet& piece : split_component(g_, comp, max_size_)) {
            if (piece.size() == 1) {
              pool.push_back(piece[0]);
              continue;
            }
            add_cluster(level, ClusterKind::kResidual, parent, std::move(piece),
                        {});
          }
        }
      }

      std::sort(pool.begin(), pool.end());
      for (NodeSet& group : two_hop_groups(g_, pool)) {
        if (group.size() == 1) {
          h_.global_singletons.push_back(group[0]);
          continue;
        }
        if (group.size() <= max_size_) {
          const auto owner = common_owner(group);
          if (owner && h_.find(*owner)->members == group) {
            continue;  // regrouped its whole parent: the parent stays the leaf
          }
          add_cluster(level, ClusterKind::kTwoHop, owner, std::move(group), {});
          continue;
        }
        for (TwoHopPiece& piece : split_two_hop(g_, group, max_size_)) {
          const auto owner = common_owner(piece.members);
          add_cluster(level, ClusterKind::kTwoHop, owner,
                      std::move(piece.members), std::move(piece.anchors));
        }
      }
      queue = std::move(next);
    }

    std::sort(h_.global_singletons.begin(), h_.global_singletons.end());
    h_.relink();
    attach_singletons();
    return std::move(h_);
  }

 private:
  ClusterId add_cluster(std::uint32_t level, ClusterKind kind,
                        std::optional<ClusterId> parent, NodeSet members,
                        NodeSet anchors) {
    Cluster c;
    c.id = static_cast<ClusterId>(h_.clusters.size());
    c.level = level;
    c.kind = kind;
    c.parent = parent;
    c.members = std::move(members);
    c.anchors = std::move(anchors);
    h_.clusters.push_back(std::move(c));
    parent_of_.push_back(parent ? *parent : kNoCluster);
    return h_.clusters.back().id;
  }

  // Lowest common ancestor of the clusters owning `nodes`.
  std::optional<ClusterId> common_owner(const NodeSet& nodes) const {
    std::vector<ClusterId> path;  // root-first chain of the current answer
    bool first = true;
    for (NodeId v : nodes) {
      ClusterId o = owner_[v];
      if (o == kNoCluster) return std::nullopt;
      std::vector<ClusterId> chain;
      for (ClusterId c = o; c != kNoCluster; c = parent_of_[c]) {
        chain.push_back(c);
      }
      std::reverse(chain.begin(), chain.end());
      if (first) {
        path = std::move(chain);
        first = false;
        continue;
      }
      std::size_t k = 0;
      while (k < path.size() && k < chain.size() && path[k] == chain[k]) ++k;
      path.resize(k);
      if (path.empty()) return std::nullopt;
    }
    if (path.empty()) return std::nullopt;
    return path.back();
  }

  void attach_singletons() {
    std::vector<std::vector<ClusterId>> leaf_of(g_.num_nodes());
    for (const auto& c : h_.clusters) {
      if (!c.is_leaf()) continue;
      for (NodeId v : c.members) leaf_of[v].push_back(c.id);
    }
    NodeSet pending = std::move(h_.global_singletons);
    h_.global_singletons.clear();
    std::map<ClusterId, std::size_t> counts;
    while (!pending.empty()) {
      NodeSet still;
      for (NodeId v : pending) {
        counts.clear();
        for (NodeId w : g_.neighbors(v)) {
          for (ClusterId c : leaf_of[w]) ++counts[c];
        }
        if (counts.empty()) {
          still.push_back(v);
          continue;
        }
        auto best = counts.begin();
        for (auto it = counts.begin(); it != counts.end(); ++it) {
          if (it->second > best->second) best = it;
        }
        Cluster* host = h_.find(best->first);
        auto at = std::lower_bound(host->members.begin(), host->members.end(), v);
        if (at == host->members.end() || *at != v) {
          // Already there when an earlier two-hop piece took v as an anchor.
          host->members.insert(at, v);
          leaf_of[v].push_back(host->id);
        }
        h_.attached_singletons[v] = host->id;
      }
      if (still.size() == pending.size()) {
        // Unreachable on a connected graph.
        h_.global_singletons = std::move(still);
        return;
      }
      pending = std::move(still);
    }
  }

  const Graph& g_;
  const CoreDecomposition& cores_;
  std::size_t max_size_;
  SubsetScratch scratch_;
  std::vector<ClusterId> owner_;      // deepest root/core cluster per node
  std::vector<ClusterId> parent_of_;  // parent per cluster id
  Hierarchy h_;
};

}  // namespace

Hierarchy build_hierarchy(const Graph& g, const CoreDecomposition& cores,
                          std::size_t max_cluster_size) {
  if (max_cluster_size < 2) {
    throw ConfigError("max cluster size must be at least 2, got " +
                      std::to_string(max_cluster_size));
  }
  if (g.empty()) throw InputError("empty input: graph has no nodes");
  if (g.num_self_loops() != 0 || connected_components(g).size() != 1) {
    throw InputError(
        "hierarchy input must be connected and loop-free; take the largest "
        "connected component first");
  }
  return HierarchyBuilder(g, cores, max_cluster_size).run();
}

Hierarchy build_hierarchy(const Graph& g, std::size_t max_cluster_size) {
  return build_hierarchy(g, core_numbers(g), max_cluster_size);
}

}  // namespace kcrag
