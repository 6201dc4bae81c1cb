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

#include <sstream>

#include <gtest/gtest.h>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/error.hpp"
#include "kcrag/fixture.hpp"
#include "testing/helpers.hpp"

namespace kcrag {
namespace {

using test::names;
using Names = std::vector<std::string>;

std::string files(const Fixture& f) {
  std::ostringstream out;
  write_edge_tsv(out, f.edges);
  write_node_jsonl(out, f.nodes);
  return out.str();
}

TEST(Fixture, KgSparseProfileAt1000) {
  for (std::uint64_t seed : {1u, 2u, 3u, 17u}) {
    const Graph g = generate_kg_sparse(1000, seed).graph();
    ASSERT_EQ(g.num_nodes(), 1000u);
    std::size_t ones = 0;
    for (NodeId v = 0; v < g.num_nodes(); ++v) ones += g.degree(v) == 1;
    const double frac = static_cast<double>(ones) / 1000.0;
    EXPECT_GE(frac, 0.50);
    EXPECT_LE(frac, 0.65);
    EXPECT_GE(g.average_degree(), 2.88);
    EXPECT_LE(g.average_degree(), 4.42);
    EXPECT_EQ(connected_components(g).size(), 1u);
    EXPECT_EQ(g.num_self_loops(), 0u);
    for (const auto& m : g.metas()) {
      EXPECT_GE(m.token_count, 10u);
      EXPECT_LE(m.token_count, 120u);
    }
  }
}

TEST(Fixture, Deterministic) {
  EXPECT_EQ(files(generate_kg_sparse(500, 9)), files(generate_kg_sparse(500, 9)));
  EXPECT_NE(files(generate_kg_sparse(500, 9)), files(generate_kg_sparse(500, 10)));
}

TEST(Fixture, TooSmallRejected) {
  EXPECT_THROW(generate_kg_sparse(9, 1), ConfigError);
}

TEST(Fixture, Figure1Shells) {
  const Graph g = figure1_fixture().graph();
  ASSERT_EQ(g.num_nodes(), 16u);
  const auto c = core_numbers(g);
  EXPECT_EQ(names(g, c.shells.at(1)), (Names{"a", "b", "c", "d", "e"}));
  EXPECT_EQ(names(g, c.shells.at(2)), (Names{"f", "g", "h", "i", "j", "k", "l"}));
  EXPECT_EQ(names(g, c.shells.at(3)), (Names{"m", "n", "o", "p"}));
  for (const auto& m : g.metas()) EXPECT_EQ(m.token_count, 10u);
}

TEST(Fixture, FilesRoundTrip) {
  const Fixture f = generate_kg_sparse(200, 4);
  std::ostringstream e, n;
  write_edge_tsv(e, f.edges);
  write_node_jsonl(n, f.nodes);
  std::istringstream ein(e.str()), nin(n.str());
  const Graph g = load_graph(read_edge_tsv(ein), read_node_jsonl(nin, TokenModel{}));
  const Graph expect = f.graph();
  EXPECT_EQ(g.edge_list(), expect.edge_list());
  EXPECT_TRUE(std::equal(g.metas().begin(), g.metas().end(),
                         expect.metas().begin(), expect.metas().end()));
}

}  // namespace
}  // namespace kcrag
