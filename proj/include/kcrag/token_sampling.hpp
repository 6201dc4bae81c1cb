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

#ifndef KCRAG_TOKEN_SAMPLING_HPP_
#define KCRAG_TOKEN_SAMPLING_HPP_

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "kcrag/graph.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/token_model.hpp"

namespace kcrag {

inline constexpr std::uint64_t kDefaultTokenLimit = 8000;
inline constexpr std::uint64_t kDefaultRelationOverhead = 8;

// max(2, floor(token_limit / mean token count)). Throws ConfigError when the
// limit is zero or every node has zero tokens.
std::size_t derive_max_cluster_size(std::uint64_t token_limit, const Graph& g);

// Token cost per undirected edge, keyed by (min, max) endpoint.
class EdgeCosts {
 public:
  EdgeCosts() = default;
  // Inserts or overwrites.
  void set(NodeId u, NodeId v, std::uint64_t cost);
  // Throws InputError when the edge has no cost.
  std::uint64_t at(NodeId u, NodeId v) const;
  bool contains(NodeId u, NodeId v) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<Edge, std::uint64_t>> entries_;  // sorted by edge
};

// tokens(u) + tokens(v) + overhead for every edge of g.
EdgeCosts default_edge_costs(const Graph& g,
                             std::uint64_t relation_overhead =
                                 kDefaultRelationOverhead);

// Overrides from a TSV of src<TAB>dst<TAB>cost; other edges keep `base`.
// Lines naming unknown nodes are skipped; a known pair without an edge is a
// ParseError.
EdgeCosts read_edge_costs(std::istream& in, const Graph& g, EdgeCosts base,
                          std::string_view source = "<costs>");

struct RankedCommunity {
  ClusterId id = 0;
  std::uint32_t level = 0;
  std::vector<Edge> edges;  // intra-community edges, best first
};

// Leaf communities ordered by level (deepest first) then id, each with its
// internal edges ranked by endpoint degree sum (descending), then smaller
// low endpoint, then smaller high endpoint. Sorting runs under OpenMP.
std::vector<RankedCommunity> rank_leaf_edges(const Hierarchy& h,
                                             const Graph& g);

enum class RetireReason { kExhausted, kUnaffordable };

struct SampledEdge {
  Edge edge;
  ClusterId community = 0;
  std::uint64_t cost = 0;

  friend bool operator==(const SampledEdge&, const SampledEdge&) = default;
};

struct CommunityOutcome {
  ClusterId id = 0;
  std::size_t candidates = 0;
  std::size_t selected = 0;
  RetireReason reason = RetireReason::kExhausted;

  friend bool operator==(const CommunityOutcome&,
                         const CommunityOutcome&) = default;
};

struct SampleResult {
  std::vector<SampledEdge> selected;  // selection order
  std::uint64_t budget = 0;
  std::uint64_t total_tokens = 0;
  std::vector<ClusterId> retired;          // retirement order
  std::vector<CommunityOutcome> outcomes;  // visiting order

  std::uint64_t remaining() const { return budget - total_tokens; }

  friend bool operator==(const SampleResult&, const SampleResult&) = default;
};

// Round-robin token-constrained selection: visits communities cyclically
// and takes each one's next ranked edge while it fits the remaining budget.
// A community whose next edge does not fit, or that has none left, retires.
SampleResult rrtc_sample(const Hierarchy& h, const Graph& g,
                         const EdgeCosts& costs, std::uint64_t budget);
SampleResult rrtc_sample(std::span<const RankedCommunity> ranked,
                         const EdgeCosts& costs, std::uint64_t budget);

// Token budget equal to the summed cost of the top floor(fraction * N)
// ranked entries, where N counts intra-community edges over all leaves and
// the global order uses the same key as the per-community rank.
std::uint64_t budget_for_edge_fraction(std::span<const RankedCommunity> ranked,
                                       const Graph& g, const EdgeCosts& costs,
                                       double fraction);

}  // namespace kcrag

#endif  // KCRAG_TOKEN_SAMPLING_HPP_
