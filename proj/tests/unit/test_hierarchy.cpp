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

#include <numeric>

#include <gtest/gtest.h>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/error.hpp"
#include "kcrag/fixture.hpp"
#include "kcrag/hierarchy.hpp"
#include "testing/helpers.hpp"
#include "testing/oracles.hpp"

namespace kcrag {
namespace {

using test::id;
using test::named;
using test::names;
using Names = std::vector<std::string>;

struct Expected {
  std::uint32_t level;
  ClusterKind kind;
  std::optional<ClusterId> parent;
  Names members;
};

void expect_structure(const Graph& g, const Hierarchy& h,
                      const std::vector<Expected>& want) {
  ASSERT_EQ(h.clusters.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const Cluster& c = h.clusters[i];
    SCOPED_TRACE("cluster " + std::to_string(i));
    EXPECT_EQ(c.id, i);
    EXPECT_EQ(c.level, want[i].level);
    EXPECT_EQ(c.kind, want[i].kind);
    EXPECT_EQ(c.parent, want[i].parent);
    EXPECT_EQ(names(g, c.members), want[i].members);
  }
}

TEST(Hierarchy, Figure1) {
  const Graph g = figure1_fixture().graph();
  const Hierarchy h = build_hierarchy(g, 16);
  using K = ClusterKind;
  expect_structure(
      g, h,
      {
          {1, K::kRoot, std::nullopt,
           {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m",
            "n", "o", "p"}},
          {2, K::kCore, 0, {"f", "g", "h", "i", "j", "k", "l", "m", "n", "o", "p"}},
          {2, K::kResidual, 0, {"a", "b"}},
          {2, K::kTwoHop, 0, {"c", "d"}},
          {3, K::kCore, 1, {"m", "n", "o", "p"}},
          {3, K::kResidual, 1, {"e", "f", "g", "h"}},
          {3, K::kResidual, 1, {"i", "j"}},
          {3, K::kResidual, 1, {"k", "l"}},
      });
  EXPECT_EQ(h.attached_singletons,
            (std::map<NodeId, ClusterId>{{id(g, "e"), 5}}));
  EXPECT_TRUE(h.global_singletons.empty());
  EXPECT_EQ(h.roots, (std::vector<ClusterId>{0}));
  EXPECT_EQ(h.max_level, 3u);
  EXPECT_EQ(h.leaf_ids(), (std::vector<ClusterId>{2, 3, 4, 5, 6, 7}));
  EXPECT_EQ(names(g, h.own_members(h.clusters[5])),
            (Names{"f", "g", "h"}));
}

TEST(Hierarchy, PathCollapsesToRoot) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "d"}});
  const Hierarchy h = build_hierarchy(g, 10);
  ASSERT_EQ(h.clusters.size(), 1u);
  EXPECT_EQ(h.clusters[0].kind, ClusterKind::kRoot);
  EXPECT_TRUE(h.clusters[0].is_leaf());
  EXPECT_EQ(h.clusters[0].members.size(), 4u);
}

TEST(Hierarchy, K4PendantCollapsesDuplicate) {
  const Graph g = named({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"},
                         {"b", "d"}, {"c", "d"}, {"p", "a"}});
  const Hierarchy h = build_hierarchy(g, 10);
  ASSERT_EQ(h.clusters.size(), 2u);
  EXPECT_EQ(h.clusters[0].level, 1u);
  EXPECT_EQ(h.clusters[0].members.size(), 5u);
  const Cluster& k4 = h.clusters[1];
  EXPECT_EQ(k4.kind, ClusterKind::kCore);
  EXPECT_EQ(k4.level, 3u);
  EXPECT_EQ(k4.parent, std::optional<ClusterId>(0));
  EXPECT_EQ(names(g, k4.members), (Names{"a", "b", "c", "d", "p"}));
  EXPECT_EQ(h.attached_singletons,
            (std::map<NodeId, ClusterId>{{id(g, "p"), 1}}));
}

TEST(Hierarchy, SingleNode) {
  const Graph g = named({}, {"solo"});
  const Hierarchy h = build_hierarchy(g, 4);
  ASSERT_EQ(h.clusters.size(), 1u);
  EXPECT_EQ(h.clusters[0].members, (NodeSet{0}));
}

TEST(Hierarchy, TwoHopGroupWithinLimitHasNoAnchor) {
  // x, y, z hang off w, which sits in a triangle.
  const Graph g = named({{"w", "q"}, {"q", "r"}, {"r", "w"}, {"w", "x"},
                         {"w", "y"}, {"w", "z"}});
  const Hierarchy h = build_hierarchy(g, 6);
  const Cluster* two_hop = nullptr;
  for (const auto& c : h.clusters) {
    if (c.kind == ClusterKind::kTwoHop) two_hop = &c;
  }
  ASSERT_NE(two_hop, nullptr);
  EXPECT_EQ(names(g, two_hop->members), (Names{"x", "y", "z"}));
  EXPECT_TRUE(two_hop->anchors.empty());
}

TEST(Hierarchy, RejectsBadInput) {
  const Graph g = named({{"a", "b"}});
  EXPECT_THROW(build_hierarchy(g, 1), ConfigError);
  EXPECT_THROW(build_hierarchy(named({{"a", "b"}, {"c", "d"}}), 4), InputError);
  EXPECT_THROW(build_hierarchy(named({{"a", "b"}, {"b", "b"}}), 4), InputError);
}

TEST(Hierarchy, InvariantsOnRandomConnectedGraphs) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Graph g = oracle::random_sparse_connected(30 + seed * 3, seed, seed);
    const auto cores = core_numbers(g);
    for (std::size_t m : {2, 3, 5, 9, 1000}) {
      const Hierarchy h = build_hierarchy(g, cores, m);
      const auto bad = oracle::check_hierarchy(g, cores.core, h, m);
      EXPECT_TRUE(bad.empty()) << "seed " << seed << " M " << m << ": "
                               << (bad.empty() ? "" : bad.front());
    }
  }
}

TEST(SplitComponent, SmallComponentUnchanged) {
  const Graph g = named({{"a", "b"}, {"b", "c"}});
  const NodeSet all{0, 1, 2};
  auto pieces = split_component(g, all, 3);
  ASSERT_EQ(pieces.size(), 1u);
  EXPECT_EQ(pieces[0], all);
}

TEST(SplitComponent, Path) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}});
  const NodeSet all{0, 1, 2, 3, 4};
  auto pieces = split_component(g, all, 3);
  ASSERT_EQ(pieces.size(), 2u);
  EXPECT_EQ(names(g, pieces[0]), (Names{"a", "b", "c"}));
  EXPECT_EQ(names(g, pieces[1]), (Names{"d", "e"}));
}

TEST(SplitComponent, StarLeavesSingletons) {
  const Graph g = named({{"x", "a"}, {"x", "b"}, {"x", "c"}, {"x", "d"},
                         {"x", "e"}});
  NodeSet all(6);
  std::iota(all.begin(), all.end(), 0);
  auto pieces = split_component(g, all, 3);
  ASSERT_EQ(pieces.size(), 4u);
  EXPECT_EQ(names(g, pieces[0]), (Names{"a", "b", "x"}));
  EXPECT_EQ(names(g, pieces[1]), (Names{"c"}));
  EXPECT_EQ(names(g, pieces[2]), (Names{"d"}));
  EXPECT_EQ(names(g, pieces[3]), (Names{"e"}));
}

TEST(SplitTwoHop, AnchorNeedsTwoMembers) {
  const Graph g = named({{"x", "w1"}, {"y", "w1"}, {"z", "w1"}, {"u", "w2"},
                         {"w1", "w2"}});
  const NodeSet h{id(g, "u"), id(g, "x"), id(g, "y"), id(g, "z")};
  auto pieces = split_two_hop(g, h, 3);
  // u seeds first on the id tie; the piece order carries no meaning here.
  std::set<std::pair<Names, Names>> got;
  for (const auto& p : pieces) {
    got.insert({names(g, p.members), names(g, p.anchors)});
  }
  EXPECT_EQ(got, (std::set<std::pair<Names, Names>>{
                     {{"w1", "x", "y", "z"}, {"w1"}}, {{"u"}, {}}}));
}

TEST(SplitTwoHop, SharedAnchorInEveryPiece) {
  const Graph g = named({{"a", "w"}, {"b", "w"}, {"c", "w"}, {"d", "w"},
                         {"e", "w"}, {"f", "w"}});
  NodeSet h;
  for (const char* v : {"a", "b", "c", "d", "e", "f"}) h.push_back(id(g, v));
  auto pieces = split_two_hop(g, h, 3);
  ASSERT_EQ(pieces.size(), 2u);
  for (const auto& p : pieces) {
    EXPECT_EQ(p.members.size(), 4u);
    EXPECT_EQ(names(g, p.anchors), (Names{"w"}));
  }
  EXPECT_EQ(names(g, pieces[0].members), (Names{"a", "b", "c", "w"}));
  EXPECT_EQ(names(g, pieces[1].members), (Names{"d", "e", "f", "w"}));
}

TEST(TwoHopGroups, AdjacentOrCommonNeighbour) {
  // a and b share x; c is adjacent to d; d and e share y; f is alone.
  const Graph g = named({{"a", "x"}, {"b", "x"}, {"c", "d"}, {"e", "y"},
                         {"x", "y"}, {"y", "d"}, {"f", "z"}, {"z", "x"}});
  const NodeSet pool{id(g, "a"), id(g, "b"), id(g, "c"), id(g, "d"),
                     id(g, "e"), id(g, "f")};
  auto groups = two_hop_groups(g, pool);
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(names(g, groups[0]), (Names{"a", "b"}));
  EXPECT_EQ(names(g, groups[1]), (Names{"c", "d", "e"}));
  EXPECT_EQ(names(g, groups[2]), (Names{"f"}));
}

}  // namespace
}  // namespace kcrag
