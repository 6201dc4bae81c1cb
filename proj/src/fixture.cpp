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

#include "kcrag/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include "json.hpp"
#include "kcrag/error.hpp"
#include "kcrag/random.hpp"

namespace kcrag {

Fixture generate_kg_sparse(std::size_t n, std::uint64_t seed,
                           const KgSparseProfile& profile) {
  if (n < 10) {
    throw ConfigError("kg_sparse fixtures need at least 10 nodes, got " +
                      std::to_string(n));
  }
  Rng rng(seed);
  const auto n_leaf = static_cast<std::size_t>(
      std::llround(profile.degree_one_fraction * static_cast<double>(n)));
  const std::size_t n_core = n - n_leaf;
  const auto m_target = static_cast<std::size_t>(
      std::llround(profile.average_degree * static_cast<double>(n) / 2.0));
  if (n_core < 3) throw ConfigError("kg_sparse: too few core nodes");

  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.below(i + 1)]);
  }
  const std::vector<NodeId> core(perm.begin(),
                                 perm.begin() + static_cast<std::ptrdiff_t>(n_core));
  const std::vector<NodeId> leaves(
      perm.begin() + static_cast<std::ptrdiff_t>(n_core), perm.end());

  std::set<Edge> edge_set;
  std::vector<Edge> edge_order;
  std::vector<std::size_t> deg(n, 0);
  // Each core node appears once plus once per incident edge.
  std::vector<NodeId> urn;
  auto add = [&](NodeId u, NodeId v) {
    const Edge e = u < v ? Edge{u, v} : Edge{v, u};
    if (u == v || !edge_set.insert(e).second) return false;
    edge_order.push_back(e);
    ++deg[u];
    ++deg[v];
    return true;
  };

  urn.push_back(core[0]);
  for (std::size_t t = 1; t < n_core; ++t) {
    const NodeId target = urn[rng.below(urn.size())];
    add(core[t], target);
    urn.push_back(target);
    urn.push_back(core[t]);
    urn.push_back(core[t]);
  }
  for (NodeId leaf : leaves) {
    const NodeId target = rng.below(2) == 0 ? core[rng.below(n_core)]
                                            : urn[rng.below(urn.size())];
    add(leaf, target);
    urn.push_back(target);
  }
  const std::size_t max_attempts = 50 * m_target + 1000;
  std::size_t attempts = 0;
  for (NodeId v : core) {
    while (deg[v] < 2) {
      if (++attempts > max_attempts) {
        throw ConfigError("kg_sparse: degree profile unachievable at n = " +
                          std::to_string(n));
      }
      const NodeId w = urn[rng.below(urn.size())];
      if (add(v, w)) {
        urn.push_back(v);
        urn.push_back(w);
      }
    }
  }
  while (edge_order.size() < m_target) {
    if (++attempts > max_attempts) {
      throw ConfigError("kg_sparse: degree profile unachievable at n = " +
                        std::to_string(n));
    }
    const NodeId u = urn[rng.below(urn.size())];
    const NodeId v = rng.below(2) == 0 ? core[rng.below(n_core)]
                                       : urn[rng.below(urn.size())];
    if (add(u, v)) {
      urn.push_back(u);
      urn.push_back(v);
    }
  }

  const double deg_one =
      static_cast<double>(std::count(deg.begin(), deg.end(), 1)) /
      static_cast<double>(n);
  const double avg =
      2.0 * static_cast<double>(edge_order.size()) / static_cast<double>(n);
  if (deg_one < profile.min_degree_one_fraction ||
      deg_one > profile.max_degree_one_fraction ||
      avg < profile.min_average_degree || avg > profile.max_average_degree) {
    throw ConfigError("kg_sparse: degree profile unachievable at n = " +
                      std::to_string(n));
  }

  Fixture fx;
  const std::size_t width = std::to_string(n - 1).size();
  auto name = [width](std::size_t i) {
    std::string digits = std::to_string(i);
    return "n" + std::string(width - digits.size(), '0') + digits;
  };
  fx.nodes.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    fx.nodes.push_back({name(i), "entity " + std::to_string(i),
                        rng.between(profile.min_tokens, profile.max_tokens)});
  }
  fx.edges.reserve(edge_order.size());
  for (const auto& [u, v] : edge_order) fx.edges.push_back({name(u), name(v)});
  return fx;
}

Fixture figure1_fixture() {
  static constexpr const char* kEdges[][2] = {
      {"a", "b"}, {"b", "k"}, {"c", "i"}, {"d", "i"}, {"e", "f"},
      {"f", "g"}, {"g", "h"}, {"f", "m"}, {"h", "m"}, {"i", "j"},
      {"i", "n"}, {"j", "n"}, {"k", "l"}, {"k", "o"}, {"l", "o"},
      {"m", "n"}, {"m", "o"}, {"m", "p"}, {"n", "o"}, {"n", "p"},
      {"o", "p"},
  };
  Fixture fx;
  for (char c = 'a'; c <= 'p'; ++c) {
    fx.nodes.push_back({std::string(1, c), std::string("node ") + c, 10});
  }
  for (const auto& e : kEdges) fx.edges.push_back({e[0], e[1]});
  return fx;
}

void write_edge_tsv(std::ostream& out, const std::vector<EdgeRecord>& edges) {
  for (const auto& e : edges) out << e.src << '\t' << e.dst << '\n';
}

void write_node_jsonl(std::ostream& out, const std::vector<NodeMeta>& nodes) {
  for (const auto& m : nodes) {
    nlohmann::json j = {
        {"id", m.external_id}, {"label", m.label}, {"tokens", m.token_count}};
    out << j.dump() << '\n';
  }
}

}  // namespace kcrag
