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

#include "kcrag/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "kcrag/error.hpp"
#include "kcrag/random.hpp"

namespace kcrag {

Partition::Partition(std::vector<CommunityId> labels) {
  std::map<CommunityId, CommunityId> remap;
  labels_.reserve(labels.size());
  for (CommunityId raw : labels) {
    auto [it, fresh] =
        remap.emplace(raw, static_cast<CommunityId>(remap.size()));
    if (fresh) sizes_.push_back(0);
    ++sizes_[it->second];
    labels_.push_back(it->second);
  }
}

Partition Partition::all_in_one(std::size_t n) {
  return Partition(std::vector<CommunityId>(n, 0));
}

Partition Partition::singletons(std::size_t n) {
  std::vector<CommunityId> labels(n);
  std::iota(labels.begin(), labels.end(), CommunityId{0});
  return Partition(std::move(labels));
}

std::vector<std::vector<NodeId>> Partition::communities() const {
  std::vector<std::vector<NodeId>> out(sizes_.size());
  for (NodeId v = 0; v < labels_.size(); ++v) out[labels_[v]].push_back(v);
  return out;
}

Partition Partition::moved(NodeId v, std::optional<CommunityId> target) const {
  std::vector<CommunityId> labels = labels_;
  labels[v] = target ? *target : static_cast<CommunityId>(sizes_.size());
  return Partition(std::move(labels));
}

namespace {

void check_sizes(const Graph& g, const Partition& p) {
  if (g.num_edges() == 0) {
    throw InputError("modularity is undefined for a graph without edges");
  }
  if (p.num_nodes() != g.num_nodes()) {
    throw InputError("partition covers " + std::to_string(p.num_nodes()) +
                     " nodes, graph has " + std::to_string(g.num_nodes()));
  }
}

}  // namespace

ModularityBreakdown modularity(const Graph& g, const Partition& p) {
  check_sizes(g, p);
  ModularityBreakdown out;
  out.communities.resize(p.num_communities());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const CommunityId c = p.community_of(u);
    out.communities[c].total_degree += g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      if (u < v && p.community_of(v) == c) ++out.communities[c].internal_edges;
    }
  }
  const auto m = static_cast<std::int64_t>(g.num_edges());
  std::int64_t edges_in = 0;
  std::int64_t sum_sq = 0;
  for (const auto& t : out.communities) {
    edges_in += static_cast<std::int64_t>(t.internal_edges);
    sum_sq += static_cast<std::int64_t>(t.total_degree * t.total_degree);
  }
  out.numerator = 4 * m * edges_in - sum_sq;
  out.denominator = static_cast<std::uint64_t>(4 * m * m);
  out.q = static_cast<double>(out.numerator) /
          static_cast<double>(out.denominator);
  return out;
}

ModularityState::ModularityState(const Graph& g, const Partition& p)
    : g_(&g), m_(g.num_edges()), labels_(p.labels()) {
  check_sizes(g, p);
  total_degree_.assign(p.num_communities(), 0);
  sizes_.assign(p.num_communities(), 0);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    total_degree_[labels_[v]] += g.degree(v);
    ++sizes_[labels_[v]];
  }
  for (CommunityId c = 0; c < total_degree_.size(); ++c) {
    by_degree_.insert({total_degree_[c], c});
  }
}

Partition ModularityState::partition() const { return Partition(labels_); }

double ModularityState::q() const {
  return modularity(*g_, Partition(labels_)).q;
}

double ModularityState::delta_for(std::uint64_t k_i, std::uint64_t d_source,
                                  std::uint64_t k_source,
                                  std::uint64_t d_target,
                                  std::uint64_t k_target) const {
  const auto k = static_cast<std::int64_t>(k_i);
  const auto m = static_cast<std::int64_t>(m_);
  const std::int64_t edge_part =
      4 * m *
      (static_cast<std::int64_t>(d_target) - static_cast<std::int64_t>(d_source));
  const std::int64_t penalty =
      2 * k *
          (static_cast<std::int64_t>(k_target) -
           static_cast<std::int64_t>(k_source)) +
      2 * k * k;
  return static_cast<double>(edge_part - penalty) /
         static_cast<double>(4 * m * m);
}

double ModularityState::move_delta(NodeId i,
                                   std::optional<CommunityId> target) const {
  const CommunityId s = labels_[i];
  if (target && *target == s) return 0.0;
  std::uint64_t d_s = 0;
  std::uint64_t d_r = 0;
  for (NodeId w : g_->neighbors(i)) {
    if (labels_[w] == s) ++d_s;
    if (target && labels_[w] == *target) ++d_r;
  }
  const std::uint64_t k_r = target ? total_degree_[*target] : 0;
  return delta_for(g_->degree(i), d_s, total_degree_[s], d_r, k_r);
}

Sensitivity ModularityState::sensitivity(NodeId i) const {
  const CommunityId s = labels_[i];
  const std::uint64_t k = g_->degree(i);
  std::map<CommunityId, std::uint64_t> adjacent;
  for (NodeId w : g_->neighbors(i)) ++adjacent[labels_[w]];
  const std::uint64_t d_s = adjacent.contains(s) ? adjacent[s] : 0;
  const std::uint64_t k_s = total_degree_[s];

  Sensitivity best;
  auto consider = [&](std::optional<CommunityId> target, std::uint64_t d_r,
                      std::uint64_t k_r) {
    const double delta = std::fabs(delta_for(k, d_s, k_s, d_r, k_r));
    const bool better =
        !best.has_target || delta > best.delta ||
        (delta == best.delta && target &&
         (!best.target || *target < *best.target));
    if (better) {
      best.delta = delta;
      best.target = target;
      best.has_target = true;
    }
  };

  for (const auto& [c, d_r] : adjacent) {
    if (c != s) consider(c, d_r, total_degree_[c]);
  }
  // For communities without neighbours of i the delta is linear in K_r, so
  // only the smallest and largest K_r can attain the maximum.
  auto excluded = [&](CommunityId c) {
    return c == s || adjacent.contains(c);
  };
  for (auto it = by_degree_.begin(); it != by_degree_.end(); ++it) {
    if (!excluded(it->second)) {
      consider(it->second, 0, it->first);
      break;
    }
  }
  for (auto it = by_degree_.rbegin(); it != by_degree_.rend(); ++it) {
    if (excluded(it->second)) continue;
    // Smallest id among communities sharing the largest K_r.
    for (auto fwd = by_degree_.lower_bound({it->first, 0});
         fwd != by_degree_.end() && fwd->first == it->first; ++fwd) {
      if (!excluded(fwd->second)) {
        consider(fwd->second, 0, fwd->first);
        break;
      }
    }
    break;
  }
  if (sizes_[s] > 1) consider(std::nullopt, 0, 0);
  return best;
}

void ModularityState::apply_move(NodeId i, std::optional<CommunityId> target) {
  const CommunityId s = labels_[i];
  CommunityId r;
  if (target) {
    r = *target;
  } else {
    r = static_cast<CommunityId>(total_degree_.size());
    total_degree_.push_back(0);
    sizes_.push_back(0);
  }
  if (r == s) return;
  const std::uint64_t k = g_->degree(i);
  if (sizes_[s] > 0) by_degree_.erase({total_degree_[s], s});
  if (sizes_[r] > 0) by_degree_.erase({total_degree_[r], r});
  total_degree_[s] -= k;
  --sizes_[s];
  total_degree_[r] += k;
  ++sizes_[r];
  labels_[i] = r;
  if (sizes_[s] > 0) by_degree_.insert({total_degree_[s], s});
  by_degree_.insert({total_degree_[r], r});
}

std::vector<CommunityId> ModularityState::live_communities() const {
  std::vector<CommunityId> out;
  for (CommunityId c = 0; c < sizes_.size(); ++c) {
    if (sizes_[c] > 0) out.push_back(c);
  }
  return out;
}

Sensitivity sensitivity(const Graph& g, const Partition& p, NodeId i) {
  return ModularityState(g, p).sensitivity(i);
}

std::uint64_t bell_number(std::size_t n) {
  if (n > 25) throw ConfigError("bell_number: n too large");
  // Bell triangle.
  std::vector<std::uint64_t> row{1};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

namespace {

// Depth-first walk over restricted growth strings with the modularity
// numerator maintained incrementally.
class PartitionWalker {
 public:
  explicit PartitionWalker(const Graph& g)
      : g_(g),
        n_(g.num_nodes()),
        four_m_(4 * static_cast<std::int64_t>(g.num_edges())),
        offset_(static_cast<std::int64_t>(g.num_edges()) * four_m_),
        histogram_(static_cast<std::size_t>(2 * offset_ + 1), 0),
        label_(n_, 0),
        total_degree_(n_ + 1, 0),
        counts_(n_, std::vector<std::uint32_t>(n_ + 1, 0)) {}

  // Fixes nodes [0, prefix.size()) and walks everything below.
  void walk_from(std::span<const CommunityId> prefix) {
    std::int64_t edges_in = 0;
    std::int64_t sum_sq = 0;
    CommunityId used = 0;
    for (std::size_t t = 0; t < prefix.size(); ++t) {
      const CommunityId c = prefix[t];
      edges_in += earlier_neighbours_in(static_cast<NodeId>(t), c);
      const auto k = static_cast<std::int64_t>(g_.degree(static_cast<NodeId>(t)));
      const auto kc = static_cast<std::int64_t>(total_degree_[c]);
      sum_sq += (kc + k) * (kc + k) - kc * kc;
      total_degree_[c] += static_cast<std::uint64_t>(k);
      label_[t] = c;
      used = std::max<CommunityId>(used, c + 1);
    }
    descend(prefix.size(), used, edges_in, sum_sq);
    for (std::size_t t = 0; t < prefix.size(); ++t) {
      total_degree_[prefix[t]] -= g_.degree(static_cast<NodeId>(t));
    }
  }

  const std::vector<std::uint64_t>& histogram() const { return histogram_; }

 private:
  std::int64_t earlier_neighbours_in(NodeId t, CommunityId c) const {
    std::int64_t count = 0;
    for (NodeId w : g_.neighbors(t)) {
      if (w < t && label_[w] == c) ++count;
    }
    return count;
  }

  void descend(std::size_t t, CommunityId used, std::int64_t edges_in,
               std::int64_t sum_sq) {
    if (t == n_) {
      ++histogram_[static_cast<std::size_t>(four_m_ * edges_in - sum_sq +
                                            offset_)];
      return;
    }
    auto& cnt = counts_[t];
    std::fill(cnt.begin(), cnt.begin() + used + 1, 0);
    for (NodeId w : g_.neighbors(static_cast<NodeId>(t))) {
      if (w < t) ++cnt[label_[w]];
    }
    const auto k = static_cast<std::int64_t>(g_.degree(static_cast<NodeId>(t)));
    for (CommunityId c = 0; c <= used && c < n_; ++c) {
      const auto kc = static_cast<std::int64_t>(total_degree_[c]);
      label_[t] = c;
      total_degree_[c] += static_cast<std::uint64_t>(k);
      descend(t + 1, c == used ? used + 1 : used, edges_in + cnt[c],
              sum_sq + 2 * kc * k + k * k);
      total_degree_[c] -= static_cast<std::uint64_t>(k);
    }
  }

  const Graph& g_;
  std::size_t n_;
  std::int64_t four_m_;
  std::int64_t offset_;  // 4m^2
  std::vector<std::uint64_t> histogram_;
  std::vector<CommunityId> label_;
  std::vector<std::uint64_t> total_degree_;
  std::vector<std::vector<std::uint32_t>> counts_;
};

void check_enumerable(const Graph& g) {
  if (g.num_nodes() > kMaxEnumerationNodes) {
    throw InputError("instance too large for exhaustive enumeration: n = " +
                     std::to_string(g.num_nodes()) + " > " +
                     std::to_string(kMaxEnumerationNodes));
  }
  if (g.num_edges() == 0) {
    throw InputError("modularity is undefined for a graph without edges");
  }
}

void prefixes(std::size_t depth, std::vector<CommunityId>& cur,
              CommunityId used, std::vector<std::vector<CommunityId>>& out) {
  if (cur.size() == depth) {
    out.push_back(cur);
    return;
  }
  for (CommunityId c = 0; c <= used; ++c) {
    cur.push_back(c);
    prefixes(depth, cur, c == used ? used + 1 : used, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::uint64_t> modularity_histogram(const Graph& g) {
  check_enumerable(g);
  PartitionWalker walker(g);
  walker.walk_from({});
  return walker.histogram();
}

std::vector<std::uint64_t> modularity_histogram_parallel(const Graph& g) {
  check_enumerable(g);
  const std::size_t depth = std::min<std::size_t>(g.num_nodes(), 6);
  std::vector<std::vector<CommunityId>> work;
  std::vector<CommunityId> cur;
  prefixes(depth, cur, 0, work);

  const std::size_t bins = PartitionWalker(g).histogram().size();
  std::vector<std::uint64_t> total(bins, 0);
  const auto count = static_cast<std::int64_t>(work.size());
#pragma omp parallel
  {
    PartitionWalker walker(g);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
      walker.walk_from(work[static_cast<std::size_t>(i)]);
    }
#pragma omp critical
    {
      const auto& local = walker.histogram();
      for (std::size_t b = 0; b < bins; ++b) total[b] += local[b];
    }
  }
  return total;
}

double statement_threshold(std::uint32_t d, const Graph& g) {
  const double m = static_cast<double>(g.num_edges());
  return static_cast<double>(d) * (2.0 + g.average_degree()) / (2.0 * m);
}

double proof_threshold(std::uint32_t d, const Graph& g) {
  const double dd = static_cast<double>(d);
  const double kbar = g.average_degree();
  const double c1 = dd * (2.0 + kbar) / ((dd + 1.0) * kbar);
  const double c2 = dd * dd / ((dd + 1.0) * (dd + 1.0) * kbar * kbar);
  return c1 + c2;
}

DegeneracyReport enumerate_degeneracy(const Graph& g, double epsilon,
                                      std::uint32_t d, bool parallel) {
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  check_enumerable(g);
  const auto hist =
      parallel ? modularity_histogram_parallel(g) : modularity_histogram(g);

  DegeneracyReport r;
  r.d = d;
  r.n = g.num_nodes();
  r.m = g.num_edges();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) <= d) ++r.n_le_d;
  }
  r.average_degree = g.average_degree();
  r.epsilon = epsilon;
  r.partitions = bell_number(r.n);
  r.theorem_bound = std::uint64_t{1}
                    << (r.n_le_d / (static_cast<std::uint64_t>(d) + 1));
  r.statement_threshold = statement_threshold(d, g);
  r.proof_threshold = proof_threshold(d, g);

  const auto m = static_cast<std::int64_t>(r.m);
  const std::int64_t offset = 4 * m * m;
  std::int64_t best = 0;
  for (std::size_t b = hist.size(); b-- > 0;) {
    if (hist[b] != 0) {
      best = static_cast<std::int64_t>(b);
      break;
    }
  }
  r.q_star = static_cast<double>(best - offset) / static_cast<double>(offset);
  auto count_within = [&](double eps) {
    std::uint64_t total = 0;
    const double scaled = eps * static_cast<double>(offset);
    for (std::size_t b = 0; b < hist.size(); ++b) {
      if (hist[b] != 0 &&
          static_cast<double>(best - static_cast<std::int64_t>(b)) < scaled) {
        total += hist[b];
      }
    }
    return total;
  };
  r.degeneracy = count_within(epsilon);
  r.degeneracy_at_statement_threshold = count_within(r.statement_threshold);
  r.degeneracy_at_proof_threshold = count_within(r.proof_threshold);
  return r;
}

namespace {

std::optional<CommunityId> random_target(Rng& rng, const ModularityState& st,
                                         NodeId j) {
  const CommunityId s = st.label_of(j);
  std::vector<std::optional<CommunityId>> options;
  for (CommunityId c : st.live_communities()) {
    if (c != s) options.emplace_back(c);
  }
  if (st.size_of(s) > 1) options.emplace_back(std::nullopt);
  if (options.empty()) return s;  // nowhere to go; identity move
  return options[rng.below(options.size())];
}

void record(BoundCheck& check, double observed, double bound, double tol) {
  ++check.trials;
  if (observed > bound + tol) ++check.violations;
  if (bound > 0.0) check.max_ratio = std::max(check.max_ratio, observed / bound);
}

}  // namespace

SparseBoundsReport verify_sparse_bounds(const Graph& g, std::uint32_t d,
                                        const SparseBoundsOptions& opts) {
  if (g.num_edges() == 0) {
    throw InputError("modularity is undefined for a graph without edges");
  }
  SparseBoundsReport report;
  report.d = d;
  const std::size_t n = g.num_nodes();
  const std::uint64_t m = g.num_edges();
  Rng rng(opts.seed);

  std::vector<Partition> partitions{Partition::all_in_one(n),
                                    Partition::singletons(n)};
  for (std::size_t t = 0; t < opts.random_partitions; ++t) {
    const std::uint64_t k = rng.between(2, std::max<std::uint64_t>(2, n / 2));
    std::vector<CommunityId> labels(n);
    for (auto& l : labels) l = static_cast<CommunityId>(rng.below(k));
    partitions.emplace_back(std::move(labels));
  }
  report.partitions = partitions.size();

  std::vector<NodeId> low;
  for (NodeId v = 0; v < n; ++v) {
    if (g.degree(v) <= d) low.push_back(v);
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i : low) {
    for (NodeId j : low) {
      if (i != j && !g.has_edge(i, j)) pairs.emplace_back(i, j);
    }
  }

  const double l2 = lemma2_bound(d, m);
  for (const Partition& p : partitions) {
    ModularityState st(g, p);
    for (NodeId i : low) {
      record(report.lemma1, st.sensitivity(i).delta,
             lemma1_bound(g.degree(i), m), opts.tolerance);
    }
    // Partial Fisher-Yates to sample pairs without replacement.
    const std::size_t take = std::min(pairs.size(), opts.max_pairs_per_partition);
    for (std::size_t t = 0; t < take; ++t) {
      std::swap(pairs[t], pairs[t + rng.below(pairs.size() - t)]);
      const auto [i, j] = pairs[t];
      const double before = st.sensitivity(i).delta;
      const CommunityId home = st.label_of(j);
      st.apply_move(j, random_target(rng, st, j));
      const double after = st.sensitivity(i).delta;
      st.apply_move(j, home);
      record(report.lemma2, std::fabs(before - after), l2, opts.tolerance);
    }
  }

  if (n <= kMaxEnumerationNodes) {
    report.theorem_checked = true;
    report.theorem = enumerate_degeneracy(g, proof_threshold(d, g), d);
    report.theorem_holds =
        report.theorem->degeneracy >= report.theorem->theorem_bound;
  }
  return report;
}

}  // namespace kcrag
