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
#include "testing/helpers.hpp"
#include "testing/oracles.hpp"

namespace kcrag {
namespace {

using test::id;
using test::named;

Graph k4_pendant() {
  return named({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"},
                {"c", "d"}, {"p", "a"}});
}

TEST(Cores, PathIsOne) {
  auto c = core_numbers(named({{"a", "b"}, {"b", "c"}}));
  EXPECT_EQ(c.core, (std::vector<CoreNumber>{1, 1, 1}));
  EXPECT_EQ(c.max_core, 1u);
}

TEST(Cores, K4IsThree) {
  auto c = core_numbers(named({{"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"},
                               {"b", "d"}, {"c", "d"}}));
  EXPECT_EQ(c.core, (std::vector<CoreNumber>{3, 3, 3, 3}));
}

TEST(Cores, K4PlusPendant) {
  Graph g = k4_pendant();
  auto c = core_numbers(g);
  EXPECT_EQ(c.max_core, 3u);
  EXPECT_EQ(c.core[id(g, "p")], 1u);
  EXPECT_EQ(c.core[id(g, "a")], 3u);
  EXPECT_EQ(c.shells.at(1), (std::vector<NodeId>{id(g, "p")}));
  EXPECT_EQ(c.shells.at(3).size(), 4u);
  EXPECT_EQ(c.core, oracle::brute_core_numbers(g));
}

TEST(Cores, IsolatedNodeIsZero) {
  auto c = core_numbers(named({{"a", "b"}}, {"a", "b", "z"}));
  EXPECT_EQ(c.core[2], 0u);
}

TEST(Cores, MatchesOracleOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    Graph g = oracle::random_graph(5 + seed % 30, 0.05 + 0.01 * (seed % 20), seed);
    auto expect = oracle::brute_core_numbers(g);
    EXPECT_EQ(core_numbers(g).core, expect) << "seed " << seed;
    EXPECT_EQ(core_numbers_parallel(g), core_numbers(g)) << "seed " << seed;
  }
}

TEST(Cores, KCoreHasMinimumDegreeK) {
  Graph g = oracle::random_graph(60, 0.12, 99);
  auto c = core_numbers(g);
  for (CoreNumber k = 1; k <= c.max_core; ++k) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (c.core[v] < k) continue;
      std::size_t inside = 0;
      for (NodeId u : g.neighbors(v)) inside += c.core[u] >= k;
      EXPECT_GE(inside, k);
    }
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) EXPECT_LE(c.core[v], g.degree(v));
}

}  // namespace
}  // namespace kcrag
