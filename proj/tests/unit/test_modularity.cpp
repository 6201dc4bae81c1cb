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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kcrag/error.hpp"
#include "kcrag/modularity.hpp"
#include "testing/helpers.hpp"
#include "testing/oracles.hpp"

namespace kcrag {
namespace {

using test::named;

Graph two_triangles() {
  return named({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"d", "e"}, {"e", "f"},
                {"f", "d"}});
}

Graph four_disjoint_edges() {
  return Graph::from_edges(8, std::vector<Edge>{{0, 1}, {2, 3}, {4, 5}, {6, 7}});
}

TEST(Partition, CanonicalLabels) {
  Partition p({7, 7, 3, 7, 9});
  EXPECT_EQ(p.labels(), (std::vector<CommunityId>{0, 0, 1, 0, 2}));
  EXPECT_EQ(p.num_communities(), 3u);
  EXPECT_EQ(p.community_size(0), 3u);
  EXPECT_EQ(Partition({1, 1, 0}), Partition({5, 5, 2}));
  EXPECT_EQ(p.moved(2, std::nullopt).labels(),
            (std::vector<CommunityId>{0, 0, 1, 0, 2}));
  EXPECT_EQ(p.moved(2, 0).labels(), (std::vector<CommunityId>{0, 0, 0, 0, 1}));
}

TEST(Modularity, AllInOneIsZero) {
  const Graph g = two_triangles();
  EXPECT_NEAR(modularity(g, Partition::all_in_one(6)).q, 0.0, 1e-12);
}

TEST(Modularity, TwoTriangles) {
  const Graph g = two_triangles();
  const auto b = modularity(g, Partition({0, 0, 0, 1, 1, 1}));
  EXPECT_NEAR(b.q, 0.5, 1e-12);
  EXPECT_EQ(b.denominator, 4u * 6u * 6u);
  EXPECT_EQ(b.communities[0].internal_edges, 3u);
  EXPECT_EQ(b.communities[0].total_degree, 6u);
}

TEST(Modularity, SingleEdgeSplit) {
  const Graph g = named({{"a", "b"}});
  EXPECT_NEAR(modularity(g, Partition::singletons(2)).q, -0.5, 1e-12);
}

TEST(Modularity, NoEdgesRejected) {
  const Graph g = named({}, {"a", "b"});
  EXPECT_THROW(modularity(g, Partition::singletons(2)), InputError);
}

TEST(Modularity, MatchesOracleOnRandomPartitions) {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph g = oracle::random_sparse_connected(20, 10, seed);
    std::uniform_int_distribution<std::uint32_t> lab(0, 4);
    std::vector<std::uint32_t> labels(g.num_nodes());
    for (auto& l : labels) l = lab(rng);
    EXPECT_NEAR(modularity(g, Partition(labels)).q,
                oracle::modularity(g, labels), 1e-12);
  }
}

TEST(Sensitivity, EdgeSplitIsHalf) {
  const Graph g = named({{"a", "b"}});
  const auto s = sensitivity(g, Partition::all_in_one(2), 0);
  EXPECT_NEAR(s.delta, 0.5, 1e-12);
  EXPECT_TRUE(s.has_target);
  EXPECT_FALSE(s.target.has_value());
}

TEST(Sensitivity, MoveToOwnCommunityIsZero) {
  const Graph g = two_triangles();
  ModularityState st(g, Partition({0, 0, 0, 1, 1, 1}));
  EXPECT_EQ(st.move_delta(0, 0), 0.0);
}

TEST(Sensitivity, MatchesOracle) {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const Graph g = oracle::random_sparse_connected(14, 6, seed);
    std::uniform_int_distribution<std::uint32_t> lab(0, 3);
    std::vector<std::uint32_t> labels(g.num_nodes());
    for (auto& l : labels) l = lab(rng);
    const Partition p(labels);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      EXPECT_NEAR(sensitivity(g, p, i).delta,
                  oracle::sensitivity(g, p.labels(), i), 1e-12);
    }
  }
}

TEST(ModularityState, MovesTrackRecomputation) {
  const Graph g = oracle::random_sparse_connected(25, 12, 3);
  ModularityState st(g, Partition::singletons(25));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<NodeId> node(0, 24);
  for (int step = 0; step < 200; ++step) {
    const NodeId v = node(rng);
    const auto live = st.live_communities();
    std::optional<CommunityId> target;
    if (step % 5 != 0) {
      target = live[std::uniform_int_distribution<std::size_t>(
          0, live.size() - 1)(rng)];
    }
    const double before = st.q();
    const double delta = st.move_delta(v, target);
    st.apply_move(v, target);
    EXPECT_NEAR(st.q() - before, delta, 1e-12);
    EXPECT_NEAR(st.q(), modularity(g, st.partition()).q, 1e-12);
  }
}

TEST(Degeneracy, Triangle) {
  const Graph g = named({{"a", "b"}, {"b", "c"}, {"c", "a"}});
  const auto r = enumerate_degeneracy(g, 0.1, 1);
  EXPECT_EQ(r.partitions, 5u);
  EXPECT_NEAR(r.q_star, 0.0, 1e-12);
  EXPECT_EQ(r.degeneracy, 1u);
}

TEST(Degeneracy, PathWideAndNarrow) {
  const Graph g = named({{"a", "b"}, {"b", "c"}});
  const auto wide = enumerate_degeneracy(g, 0.2, 1);
  EXPECT_NEAR(wide.q_star, 0.0, 1e-12);
  EXPECT_EQ(wide.degeneracy, 3u);
  EXPECT_EQ(enumerate_degeneracy(g, 0.05, 1).degeneracy, 1u);
  EXPECT_NEAR(modularity(g, Partition({0, 0, 1})).q, -0.125, 1e-12);
}

TEST(Degeneracy, PathLemma1Bound) {
  const Graph g = named({{"a", "b"}, {"b", "c"}});
  EXPECT_DOUBLE_EQ(lemma1_bound(1, 2), 1.125);
  oracle::for_each_partition(3, [&](const std::vector<std::uint32_t>& l) {
    for (NodeId end : {NodeId{0}, NodeId{2}}) {
      EXPECT_LE(oracle::sensitivity(g, l, end), 1.125 + 1e-12);
      EXPECT_LE(sensitivity(g, Partition(l), end).delta, 1.125 + 1e-12);
    }
  });
}

TEST(Degeneracy, FourDisjointEdges) {
  const Graph g = four_disjoint_edges();
  EXPECT_NEAR(proof_threshold(1, g), 1.75, 1e-12);
  const auto r = enumerate_degeneracy(g, proof_threshold(1, g), 1);
  EXPECT_EQ(r.n_le_d, 8u);
  EXPECT_EQ(r.partitions, 4140u);
  EXPECT_EQ(r.theorem_bound, 16u);
  EXPECT_GE(r.degeneracy, 16u);
  EXPECT_EQ(r.degeneracy, oracle::degeneracy(g, proof_threshold(1, g)).within);
}

TEST(Degeneracy, ZeroCutoffBoundIsOne) {
  const Graph g = named({{"a", "b"}, {"b", "c"}});
  const auto r = enumerate_degeneracy(g, 0.1, 0);
  EXPECT_EQ(r.n_le_d, 0u);
  EXPECT_EQ(r.theorem_bound, 1u);
  EXPECT_GE(r.degeneracy, 1u);
}

TEST(Degeneracy, MatchesOracleCounts) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = oracle::random_sparse_connected(7, seed % 3, seed);
    for (double eps : {0.01, 0.1, 0.3}) {
      const auto r = enumerate_degeneracy(g, eps, 1, false);
      const auto o = oracle::degeneracy(g, eps);
      EXPECT_EQ(r.partitions, o.partitions);
      EXPECT_NEAR(r.q_star, o.q_star, 1e-12);
      EXPECT_EQ(r.degeneracy, o.within) << "seed " << seed << " eps " << eps;
    }
  }
}

TEST(Degeneracy, SerialAndParallelHistogramsAgree) {
  const Graph g = oracle::random_sparse_connected(10, 4, 42);
  EXPECT_EQ(modularity_histogram(g), modularity_histogram_parallel(g));
}

TEST(Degeneracy, TooLargeRejected) {
  const Graph g = oracle::random_sparse_connected(13, 0, 1);
  EXPECT_THROW(enumerate_degeneracy(g, 0.1, 1), InputError);
  EXPECT_THROW(enumerate_degeneracy(named({{"a", "b"}}), 0.0, 1), ConfigError);
}

TEST(Bell, SmallValues) {
  EXPECT_EQ(bell_number(0), 1u);
  EXPECT_EQ(bell_number(3), 5u);
  EXPECT_EQ(bell_number(8), 4140u);
  EXPECT_EQ(bell_number(10), 115975u);
}

TEST(SparseBounds, Lemma1HoldsOnSparseGraph) {
  const Graph g = oracle::random_sparse_connected(9, 2, 8);
  const auto r = verify_sparse_bounds(g, 2);
  EXPECT_EQ(r.lemma1.violations, 0u);
  EXPECT_GT(r.lemma1.trials, 0u);
  EXPECT_TRUE(r.theorem_checked);
}

}  // namespace
}  // namespace kcrag
