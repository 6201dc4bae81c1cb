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

#ifndef KCRAG_GRAPH_HPP_
#define KCRAG_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kcrag/token_model.hpp"

namespace kcrag {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

struct NodeMeta {
  std::string external_id;
  std::string label;
  std::uint64_t token_count = 0;

  friend bool operator==(const NodeMeta&, const NodeMeta&) = default;
};

struct EdgeRecord {
  std::string src;
  std::string dst;
};

// Immutable undirected graph in CSR form. Node ids are dense and follow the
// lexicographic order of external ids, which every tie-break downstream
// relies on. Self-loops are not part of the adjacency; they are counted per
// node so that preprocessing can report and drop them.
class Graph {
 public:
  Graph() = default;

  // `meta` must be sorted by external_id with unique ids. Duplicate edges
  // collapse; (v, v) pairs go to the self-loop counter.
  Graph(std::vector<NodeMeta> meta, std::span<const Edge> edges);

  // Test/fixture convenience: nodes named "v0000", "v0001", ... with no
  // label and zero tokens.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return meta_.size(); }
  std::size_t num_edges() const { return targets_.size() / 2; }
  bool empty() const { return meta_.empty(); }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  // 2m / n; 0 for the empty graph.
  double average_degree() const;

  const NodeMeta& meta(NodeId v) const { return meta_[v]; }
  std::span<const NodeMeta> metas() const { return meta_; }
  std::optional<NodeId> find(std::string_view external_id) const;

  bool has_self_loop(NodeId v) const { return self_loop_[v] != 0; }
  std::size_t num_self_loops() const;

  // Every undirected edge once, as (u, v) with u < v, sorted.
  std::vector<Edge> edge_list() const;

 private:
  std::vector<NodeMeta> meta_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> targets_;
  std::vector<std::uint8_t> self_loop_;
};

// Builds a graph from external-id records. Endpoints missing from
// `node_records` are registered with an empty label and zero tokens.
// Throws InputError on zero nodes or duplicate node ids.
Graph load_graph(std::span<const EdgeRecord> edge_records,
                 std::span<const NodeMeta> node_records);

// Induced subgraph on `nodes` (sorted, unique). Self-loops are dropped.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

// Same graph without self-loops.
Graph remove_self_loops(const Graph& g);

// Connected components, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> connected_components(const Graph& g);

// Largest component with self-loops removed. Size ties go to the component
// holding the smallest external id.
Graph largest_connected_component(const Graph& g);

// TSV: src<TAB>dst[<TAB>weight]. '#' lines and blank lines are skipped; the
// weight must be numeric when present and is discarded.
std::vector<EdgeRecord> read_edge_tsv(std::istream& in,
                                      std::string_view source = "<edges>");

// JSON Lines with keys id (required), label, tokens, text. When `tokens` is
// absent the count is estimated from `text` with `model`.
std::vector<NodeMeta> read_node_jsonl(std::istream& in, const TokenModel& model,
                                      std::string_view source = "<nodes>");

}  // namespace kcrag

#endif  // KCRAG_GRAPH_HPP_
