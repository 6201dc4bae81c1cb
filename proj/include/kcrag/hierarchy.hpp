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

#ifndef KCRAG_HIERARCHY_HPP_
#define KCRAG_HIERARCHY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/graph.hpp"

namespace kcrag {

using ClusterId = std::uint32_t;
using NodeSet = std::vector<NodeId>;  // sorted, unique

enum class ClusterKind { kRoot, kCore, kResidual, kTwoHop };

std::string_view to_string(ClusterKind kind);
std::optional<ClusterKind> cluster_kind_from_string(std::string_view s);

struct Cluster {
  ClusterId id = 0;
  std::uint32_t level = 1;
  ClusterKind kind = ClusterKind::kCore;
  std::optional<ClusterId> parent;
  std::vector<ClusterId> children;  // ascending
  NodeSet members;
  // Anchor nodes pulled in by the 2-hop splitter; a subset of `members`
  // that other clusters may also hold.
  NodeSet anchors;

  bool is_leaf() const { return children.empty(); }

  friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct Hierarchy {
  std::vector<Cluster> clusters;  // ascending id; ids may have gaps
  std::vector<ClusterId> roots;   // parentless clusters, ascending
  // Global singletons and the leaf each one was attached to.
  std::map<NodeId, ClusterId> attached_singletons;
  // Singletons still waiting for attachment; empty on a finished hierarchy.
  NodeSet global_singletons;
  std::uint32_t max_level = 0;
  std::size_t max_cluster_size = 0;

  const Cluster* find(ClusterId id) const;
  Cluster* find(ClusterId id);
  std::vector<ClusterId> leaf_ids() const;

  // Members minus anchors minus attached singletons: the part of a cluster
  // its own construction step placed there.
  NodeSet own_members(const Cluster& c) const;
  // Members minus attached singletons.
  NodeSet structural_members(const Cluster& c) const;

  // Recomputes children lists and roots from parent links.
  void relink();

  friend bool operator==(const Hierarchy&, const Hierarchy&) = default;
};

// Greedy size-bounded split of a connected node set. Seeds are the
// highest-degree remaining nodes; growth adds the frontier node with the most
// neighbours inside the cluster. The frontier accumulates
// (frontier ∪ N(v)) \ S within R. Ties go to the smallest id. Returns R
// unchanged when |R| <= M.
std::vector<NodeSet> split_component(const Graph& g, std::span<const NodeId> r,
                                     std::size_t max_size);

struct TwoHopPiece {
  NodeSet members;  // grown nodes plus selected anchors
  NodeSet anchors;
};

// Splits a 2-hop connected set H of former singletons. Anchors are the
// neighbours of H outside H; growth favours nodes sharing the most anchors
// with the cluster, and anchors touching >= 2 grown nodes join the piece.
std::vector<TwoHopPiece> split_two_hop(const Graph& g,
                                       std::span<const NodeId> h,
                                       std::size_t max_size);

// Components of the "adjacent or common neighbour" relation restricted to
// `pool`, ordered by smallest member.
std::vector<NodeSet> two_hop_groups(const Graph& g,
                                    std::span<const NodeId> pool);

// Residual-aware k-core hierarchy. `g` must be connected and loop-free
// (the output of largest_connected_component). Throws ConfigError when
// max_cluster_size < 2.
Hierarchy build_hierarchy(const Graph& g, std::size_t max_cluster_size);
Hierarchy build_hierarchy(const Graph& g, const CoreDecomposition& cores,
                          std::size_t max_cluster_size);

}  // namespace kcrag

#endif  // KCRAG_HIERARCHY_HPP_
