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

#ifndef KCRAG_FIXTURE_HPP_
#define KCRAG_FIXTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kcrag/graph.hpp"

namespace kcrag {

struct Fixture {
  std::vector<EdgeRecord> edges;
  std::vector<NodeMeta> nodes;

  Graph graph() const { return load_graph(edges, nodes); }
};

// Degree profile of the sparse knowledge-graph fixtures.
struct KgSparseProfile {
  double degree_one_fraction = 0.575;
  double average_degree = 3.4;
  double min_degree_one_fraction = 0.50;
  double max_degree_one_fraction = 0.65;
  double min_average_degree = 2.88;
  double max_average_degree = 4.42;
  std::uint64_t min_tokens = 10;
  std::uint64_t max_tokens = 120;
};

// Connected sparse graph: a preferential-attachment tree over "core" nodes,
// degree-1 pendants hung off core nodes, then extra core-core edges until the
// target average degree is reached. Deterministic in (n, seed). Throws
// ConfigError when n < 10 or the profile cannot be met at this size.
Fixture generate_kg_sparse(std::size_t n, std::uint64_t seed,
                           const KgSparseProfile& profile = {});

// Sixteen nodes a..p: 1-shell {a..e}, 2-shell {f..l}, 3-core {m..p}, with
// residual components (a,b), (f,g,h), (i,j), (k,l), the 2-hop pair (c,d) and
// singleton e hanging off f. Every node carries 10 tokens.
Fixture figure1_fixture();

void write_edge_tsv(std::ostream& out, const std::vector<EdgeRecord>& edges);
void write_node_jsonl(std::ostream& out, const std::vector<NodeMeta>& nodes);

}  // namespace kcrag

#endif  // KCRAG_FIXTURE_HPP_
