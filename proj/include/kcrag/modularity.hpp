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

#ifndef KCRAG_MODULARITY_HPP_
#define KCRAG_MODULARITY_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "kcrag/graph.hpp"

namespace kcrag {

using CommunityId = std::uint32_t;

// Assignment of every node to a community. Labels are canonicalised to
// first-appearance order (0, 1, ...), so equal set partitions compare equal.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<CommunityId> labels);

  static Partition all_in_one(std::size_t n);
  static Partition singletons(std::size_t n);

  std::size_t num_nodes() const { return labels_.size(); }
  std::size_t num_communities() const { return sizes_.size(); }
  CommunityId community_of(NodeId v) const { return labels_[v]; }
  std::size_t community_size(CommunityId c) const { return sizes_[c]; }
  const std::vector<CommunityId>& labels() const { return labels_; }
  std::vector<std::vector<NodeId>> communities() const;

  // Partition with node v moved to community `target`; nullopt moves v to a
  // new singleton community.
  Partition moved(NodeId v, std::optional<CommunityId> target) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<CommunityId> labels_;
  std::vector<std::size_t> sizes_;
};

struct CommunityTerms {
  std::uint64_t internal_edges = 0;  // e_c
  std::uint64_t total_degree = 0;    // K_c
};

// Q = sum_c [e_c/m - (K_c/2m)^2] = numerator / (4 m^2), with
// numerator = 4m * sum e_c - sum K_c^2 held exactly.
struct ModularityBreakdown {
  double q = 0.0;
  std::int64_t numerator = 0;
  std::uint64_t denominator = 0;
  std::vector<CommunityTerms> communities;  // indexed by CommunityId
};

// Throws InputError when the graph has no edges or sizes disagree.
ModularityBreakdown modularity(const Graph& g, const Partition& p);

struct Sensitivity {
  double delta = 0.0;  // max |Q(σ) - Q(σ^{i→r})|
  // Best move; nullopt target means a new singleton community.
  std::optional<CommunityId> target;
  bool has_target = false;  // false when no other placement exists
};

// Partition plus per-community degree totals, for O(k_i log C) move deltas.
class ModularityState {
 public:
  ModularityState(const Graph& g, const Partition& p);

  Partition partition() const;
  double q() const;

  CommunityId label_of(NodeId v) const { return labels_[v]; }
  std::size_t size_of(CommunityId c) const { return sizes_[c]; }
  // Non-empty community ids, ascending.
  std::vector<CommunityId> live_communities() const;

  // Q(σ^{i→r}) - Q(σ); nullopt target is a new singleton community.
  double move_delta(NodeId i, std::optional<CommunityId> target) const;

  // Targets are every other community plus a new singleton when i does not
  // already sit alone.
  Sensitivity sensitivity(NodeId i) const;

  // Moving into an emptied community id revives it.
  void apply_move(NodeId i, std::optional<CommunityId> target);

 private:
  double delta_for(std::uint64_t k_i, std::uint64_t d_source,
                   std::uint64_t k_source, std::uint64_t d_target,
                   std::uint64_t k_target) const;

  const Graph* g_;
  std::uint64_t m_;
  std::vector<CommunityId> labels_;
  std::vector<std::uint64_t> total_degree_;
  std::vector<std::size_t> sizes_;
  // (K_c, c) for non-empty communities.
  std::set<std::pair<std::uint64_t, CommunityId>> by_degree_;
};

Sensitivity sensitivity(const Graph& g, const Partition& p, NodeId i);

// Bell(n) for n <= 25.
std::uint64_t bell_number(std::size_t n);

inline constexpr std::size_t kMaxEnumerationNodes = 12;

struct DegeneracyReport {
  std::uint32_t d = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t n_le_d = 0;
  double average_degree = 0.0;
  double epsilon = 0.0;
  double q_star = 0.0;
  std::uint64_t partitions = 0;        // Bell(n)
  std::uint64_t degeneracy = 0;        // D(epsilon)
  std::uint64_t theorem_bound = 0;     // 2^floor(n_le_d / (d+1))
  double statement_threshold = 0.0;    // d(2+k̄)/(2m)
  double proof_threshold = 0.0;        // C1 + C2
  std::uint64_t degeneracy_at_statement_threshold = 0;
  std::uint64_t degeneracy_at_proof_threshold = 0;
};

// Histogram of modularity numerators over every set partition of V, indexed
// by numerator + 4m^2. Serial depth-first walk over restricted growth strings.
std::vector<std::uint64_t> modularity_histogram(const Graph& g);
// Same histogram; the restricted-growth-string space is cut into prefixes
// that OpenMP threads walk independently. Bit-identical to the serial one.
std::vector<std::uint64_t> modularity_histogram_parallel(const Graph& g);

// Exhaustive ε-degeneracy. Throws InputError when n > 12 or m == 0 and
// ConfigError when epsilon <= 0.
DegeneracyReport enumerate_degeneracy(const Graph& g, double epsilon,
                                      std::uint32_t d, bool parallel = true);

// Theorem constants.
double statement_threshold(std::uint32_t d, const Graph& g);
double proof_threshold(std::uint32_t d, const Graph& g);

struct BoundCheck {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // observed / bound, over trials with bound > 0
};

struct SparseBoundsReport {
  std::uint32_t d = 0;
  std::size_t partitions = 0;
  BoundCheck lemma1;  // Δ_i <= 2k_i/m + k_i^2/(2m^2)
  BoundCheck lemma2;  // |Δ_i(σ) - Δ_i(σ')| <= 2d^2/(2m)^2
  bool theorem_checked = false;
  std::optional<DegeneracyReport> theorem;
  bool theorem_holds = true;  // D(ε′) >= 2^floor(n_le_d/(d+1))

  bool ok() const {
    return lemma1.violations == 0 && lemma2.violations == 0 && theorem_holds;
  }
};

struct SparseBoundsOptions {
  std::uint64_t seed = 1;
  std::size_t random_partitions = 20;
  std::size_t max_pairs_per_partition = 200;
  double tolerance = 1e-12;
};

inline double lemma1_bound(std::uint64_t k_i, std::uint64_t m) {
  const double k = static_cast<double>(k_i);
  const double mm = static_cast<double>(m);
  return 2.0 * k / mm + k * k / (2.0 * mm * mm);
}

inline double lemma2_bound(std::uint32_t d, std::uint64_t m) {
  const double dd = static_cast<double>(d);
  const double two_m = 2.0 * static_cast<double>(m);
  return 2.0 * dd * dd / (two_m * two_m);
}

// Checks both lemmas over a seeded partition set (all-in-one, singletons and
// random labelings) and, for n <= 12, the theorem's counting bound at the
// proof threshold.
SparseBoundsReport verify_sparse_bounds(const Graph& g, std::uint32_t d,
                                        const SparseBoundsOptions& opts = {});

}  // namespace kcrag

#endif  // KCRAG_MODULARITY_HPP_
