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

// Small helpers for building named test graphs.

#ifndef KCRAG_TESTS_HELPERS_HPP_
#define KCRAG_TESTS_HELPERS_HPP_

#include <initializer_list>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kcrag/graph.hpp"
#include "kcrag/hierarchy.hpp"

namespace kcrag::test {

inline Graph named(std::initializer_list<std::pair<const char*, const char*>> es,
                   std::initializer_list<const char*> extra_nodes = {}) {
  std::vector<EdgeRecord> edges;
  for (const auto& [a, b] : es) edges.push_back({a, b});
  std::vector<NodeMeta> nodes;
  for (const char* v : extra_nodes) nodes.push_back({v, "", 0});
  return load_graph(edges, nodes);
}

inline NodeId id(const Graph& g, const std::string& name) {
  return *g.find(name);
}

inline std::vector<std::string> names(const Graph& g,
                                      const std::vector<NodeId>& vs) {
  std::vector<std::string> out;
  for (NodeId v : vs) out.push_back(g.meta(v).external_id);
  return out;
}

// Set of member-name lists of every cluster, for order-free comparison.
inline std::set<std::vector<std::string>> member_sets(
    const Graph& g, const Hierarchy& h, const std::vector<ClusterId>& ids) {
  std::set<std::vector<std::string>> out;
  for (ClusterId c : ids) out.insert(names(g, h.find(c)->members));
  return out;
}

}  // namespace kcrag::test

#endif  // KCRAG_TESTS_HELPERS_HPP_
