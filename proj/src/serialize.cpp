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

#include "kcrag/serialize.hpp"

#include <algorithm>
#include <ostream>

#include "kcrag/error.hpp"

namespace kcrag {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Graph& g, const CoreDecomposition& cores) {
  Json by_id = Json::object();
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    by_id[g.meta(v).external_id] = cores.core[v];
  }
  return {{"max_core", cores.max_core}, {"cores", std::move(by_id)}};
}

namespace {

Json names(const Graph& g, const NodeSet& nodes) {
  Json out = Json::array();
  for (NodeId v : nodes) out.push_back(g.meta(v).external_id);
  return out;
}

NodeSet ids_from(const Json& arr, const Graph& g) {
  if (!arr.is_array()) throw InputError("hierarchy: expected an id array");
  NodeSet out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw InputError("hierarchy: node ids are strings");
    auto id = g.find(item.get<std::string>());
    if (!id) {
      throw InputError("hierarchy: unknown node '" + item.get<std::string>() +
                       "'");
    }
    out.push_back(*id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

Json to_json(const Graph& g, const Hierarchy& h) {
  Json clusters = Json::array();
  for (const auto& c : h.clusters) {
    clusters.push_back({
        {"id", c.id},
        {"level", c.level},
        {"kind", std::string(to_string(c.kind))},
        {"parent", c.parent ? Json(*c.parent) : Json(nullptr)},
        {"members", names(g, c.members)},
        {"anchors", names(g, c.anchors)},
    });
  }
  Json attached = Json::object();
  for (const auto& [v, cid] : h.attached_singletons) {
    attached[g.meta(v).external_id] = cid;
  }
  return {
      {"max_cluster_size", h.max_cluster_size},
      {"max_level", h.max_level},
      {"clusters", std::move(clusters)},
      {"attached_singletons", std::move(attached)},
      {"global_singletons", names(g, h.global_singletons)},
  };
}

Hierarchy hierarchy_from_json(const Json& j, const Graph& g) {
  try {
    Hierarchy h;
    h.max_cluster_size = j.at("max_cluster_size").get<std::size_t>();
    for (const auto& item : j.at("clusters")) {
      Cluster c;
      c.id = item.at("id").get<ClusterId>();
      c.level = item.at("level").get<std::uint32_t>();
      auto kind = cluster_kind_from_string(item.at("kind").get<std::string>());
      if (!kind) throw InputError("hierarchy: unknown cluster kind");
      c.kind = *kind;
      if (!item.at("parent").is_null()) {
        c.parent = item.at("parent").get<ClusterId>();
      }
      c.members = ids_from(item.at("members"), g);
      if (item.contains("anchors")) c.anchors = ids_from(item.at("anchors"), g);
      h.clusters.push_back(std::move(c));
    }
    std::sort(h.clusters.begin(), h.clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.id < b.id; });
    if (j.contains("attached_singletons")) {
      for (const auto& [name, cid] : j.at("attached_singletons").items()) {
        auto v = g.find(name);
        if (!v) throw InputError("hierarchy: unknown node '" + name + "'");
        h.attached_singletons[*v] = cid.get<ClusterId>();
      }
    }
    if (j.contains("global_singletons")) {
      h.global_singletons = ids_from(j.at("global_singletons"), g);
    }
    h.relink();
    return h;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("hierarchy: malformed document: ") + e.what());
  }
}

Json to_json(const MergeReport& report, std::size_t clusters_before,
             std::size_t clusters_after) {
  Json merged = Json::array();
  for (const auto& [small, host] : report.merged) {
    merged.push_back({{"small", small}, {"host", host}});
  }
  return {
      {"mode", std::string(to_string(report.mode))},
      {"merged", std::move(merged)},
      {"promoted", report.promoted},
      {"dissolved", report.dissolved},
      {"clusters_before", clusters_before},
      {"clusters_after", clusters_after},
  };
}

Json to_json(const CommunityStats& stats) {
  Json histogram = Json::array();
  for (const auto& [size, count] : stats.size_histogram) {
    histogram.push_back({size, count});
  }
  return {
      {"level", stats.level_tag},
      {"num_communities", stats.num_communities},
      {"coverage_pct_nodes", stats.coverage_pct_nodes},
      {"coverage_pct_sampled", stats.coverage_pct_sampled
                                   ? Json(*stats.coverage_pct_sampled)
                                   : Json(nullptr)},
      {"histogram", std::move(histogram)},
  };
}

Json to_json(const DegeneracyReport& r) {
  return {
      {"d", r.d},
      {"n", r.n},
      {"m", r.m},
      {"n_le_d", r.n_le_d},
      {"average_degree", r.average_degree},
      {"epsilon", r.epsilon},
      {"q_star", r.q_star},
      {"partitions", r.partitions},
      {"degeneracy", r.degeneracy},
      {"theorem_bound", r.theorem_bound},
      {"statement_threshold", r.statement_threshold},
      {"proof_threshold", r.proof_threshold},
      {"degeneracy_at_statement_threshold",
       r.degeneracy_at_statement_threshold},
      {"degeneracy_at_proof_threshold", r.degeneracy_at_proof_threshold},
  };
}

Json to_json(const SparseBoundsReport& r) {
  auto check = [](const BoundCheck& c) {
    return Json{{"trials", c.trials},
                {"violations", c.violations},
                {"max_ratio", c.max_ratio}};
  };
  return {
      {"d", r.d},
      {"partitions", r.partitions},
      {"lemma1", check(r.lemma1)},
      {"lemma2", check(r.lemma2)},
      {"theorem_checked", r.theorem_checked},
      {"theorem", r.theorem ? to_json(*r.theorem) : Json(nullptr)},
      {"theorem_holds", r.theorem_holds},
      {"ok", r.ok()},
  };
}

void write_sample_tsv(std::ostream& out, const Graph& g,
                      const SampleResult& sample) {
  for (const auto& se : sample.selected) {
    out << g.meta(se.edge.first).external_id << '\t'
        << g.meta(se.edge.second).external_id << '\t' << se.community << '\t'
        << se.cost << '\n';
  }
}

}  // namespace kcrag
