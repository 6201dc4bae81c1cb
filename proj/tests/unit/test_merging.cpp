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

#include <gtest/gtest.h>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/fixture.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/merging.hpp"
#include "testing/helpers.hpp"
#include "testing/oracles.hpp"

namespace kcrag {
namespace {

using test::id;
using test::named;
using test::names;
using Names = std::vector<std::string>;

Cluster make(ClusterId cid, std::uint32_t level, ClusterKind kind,
             std::optional<ClusterId> parent, NodeSet members) {
  Cluster c;
  c.id = cid;
  c.level = level;
  c.kind = kind;
  c.parent = parent;
  std::sort(members.begin(), members.end());
  c.members = std::move(members);
  return c;
}

std::set<NodeId> leaf_cover(const Hierarchy& h) {
  std::set<NodeId> out;
  for (const auto& c : h.clusters) {
    if (c.is_leaf()) out.insert(c.members.begin(), c.members.end());
  }
  return out;
}

TEST(Merge, NothingEligible) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}});
  const Hierarchy h = build_hierarchy(g, 10);
  const auto r = merge_small_clusters(g, h, MergeMode::kTwoHopOnly);
  EXPECT_EQ(r.hierarchy, h);
  EXPECT_TRUE(r.report.merged.empty());
  EXPECT_TRUE(r.report.promoted.empty());
}

TEST(Merge, SmallClusterJoinsHost) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"x", "a"},
                         {"y", "b"}});
  Hierarchy h;
  const NodeSet all{0, 1, 2, 3, 4};
  h.clusters.push_back(make(0, 1, ClusterKind::kRoot, std::nullopt, all));
  h.clusters.push_back(make(1, 2, ClusterKind::kCore, 0,
                            {id(g, "a"), id(g, "b"), id(g, "c")}));
  h.clusters.push_back(
      make(2, 2, ClusterKind::kTwoHop, 0, {id(g, "x"), id(g, "y")}));
  h.max_cluster_size = 3;
  h.relink();

  const auto r = merge_small_clusters(g, h, MergeMode::kTwoHopOnly);
  ASSERT_EQ(r.hierarchy.clusters.size(), 2u);
  EXPECT_EQ(names(g, r.hierarchy.find(1)->members),
            (Names{"a", "b", "c", "x", "y"}));
  EXPECT_EQ(r.hierarchy.find(2), nullptr);
  EXPECT_EQ(r.report.merged,
            (std::vector<std::pair<ClusterId, ClusterId>>{{2, 1}}));
  EXPECT_EQ(r.hierarchy.find(0)->children, (std::vector<ClusterId>{1}));
}

TEST(Merge, IsolatedSmallClusterPromoted) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"x", "y"}});
  Hierarchy h;
  h.clusters.push_back(make(0, 2, ClusterKind::kCore, std::nullopt,
                            {id(g, "a"), id(g, "b"), id(g, "c")}));
  h.clusters.push_back(
      make(1, 2, ClusterKind::kTwoHop, std::nullopt, {id(g, "x"), id(g, "y")}));
  h.relink();
  const auto r = merge_small_clusters(g, h, MergeMode::kTwoHopOnly);
  EXPECT_EQ(r.hierarchy.clusters.size(), 2u);
  EXPECT_TRUE(r.report.merged.empty());
  EXPECT_EQ(r.report.promoted, (std::vector<ClusterId>{1}));
}

TEST(Merge, Figure1TwoHopOnly) {
  const Graph g = figure1_fixture().graph();
  const Hierarchy h = build_hierarchy(g, 16);
  const auto r = merge_small_clusters(g, h, MergeMode::kTwoHopOnly);
  EXPECT_EQ(r.report.merged,
            (std::vector<std::pair<ClusterId, ClusterId>>{{3, 6}}));
  EXPECT_EQ(names(g, r.hierarchy.find(6)->members),
            (Names{"c", "d", "i", "j"}));
  EXPECT_EQ(r.hierarchy.clusters.size(), 7u);
  EXPECT_EQ(leaf_cover(r.hierarchy), leaf_cover(h));
}

TEST(Merge, Figure1ResidualAndTwoHop) {
  const Graph g = figure1_fixture().graph();
  const Hierarchy h = build_hierarchy(g, 16);
  const auto r = merge_small_clusters(g, h, MergeMode::kResidualAndTwoHop);
  // (i,j) and (k,l) both touch the K4 twice; the lower id goes first, after
  // which (c,d) reaches the K4 through i and (a,b) through k.
  EXPECT_EQ(r.report.merged,
            (std::vector<std::pair<ClusterId, ClusterId>>{
                {6, 4}, {3, 4}, {7, 4}, {2, 4}}));
  EXPECT_EQ(r.hierarchy.clusters.size(), 4u);
  EXPECT_EQ(names(g, r.hierarchy.find(4)->members),
            (Names{"a", "b", "c", "d", "i", "j", "k", "l", "m", "n", "o",
                   "p"}));
  EXPECT_EQ(leaf_cover(r.hierarchy), leaf_cover(h));
}

TEST(Merge, CountsMonotoneAndNodesConserved) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Graph g = generate_kg_sparse(300, seed).graph();
    const Hierarchy h = build_hierarchy(g, 12);
    const auto two = merge_small_clusters(g, h, MergeMode::kTwoHopOnly);
    const auto res = merge_small_clusters(g, h, MergeMode::kResidualAndTwoHop);
    EXPECT_LE(res.hierarchy.clusters.size(), two.hierarchy.clusters.size());
    EXPECT_LE(two.hierarchy.clusters.size(), h.clusters.size());
    EXPECT_EQ(leaf_cover(two.hierarchy), leaf_cover(h));
    EXPECT_EQ(leaf_cover(res.hierarchy), leaf_cover(h));
  }
}

TEST(Merge, ModeNames) {
  EXPECT_EQ(to_string(MergeMode::kTwoHopOnly), "m2hc");
  EXPECT_EQ(merge_mode_from_string("mrc"), MergeMode::kResidualAndTwoHop);
  EXPECT_FALSE(merge_mode_from_string("leiden").has_value());
}

}  // namespace
}  // namespace kcrag
