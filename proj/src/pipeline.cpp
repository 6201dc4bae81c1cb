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

#include "kcrag/pipeline.hpp"

#include <fstream>
#include <functional>
#include <string>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/error.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/serialize.hpp"
#include "kcrag/stats.hpp"

namespace kcrag {
namespace {

std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot read " + p.string());
  return in;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw InputError("cannot write " + p.string());
  out << text;
}

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

Graph load(const std::filesystem::path& edges,
           const std::optional<std::filesystem::path>& nodes,
           double chars_per_token) {
  auto edge_in = open_in(edges);
  const auto edge_records = read_edge_tsv(edge_in, edges.string());
  std::vector<NodeMeta> node_records;
  if (nodes) {
    auto node_in = open_in(*nodes);
    TokenModel model;
    model.chars_per_token = chars_per_token;
    node_records = read_node_jsonl(node_in, model, nodes->string());
  }
  return load_graph(edge_records, node_records);
}

}  // namespace

void validate(const PipelineConfig& cfg) {
  if (cfg.token_budget && cfg.edge_fraction) {
    throw ConfigError("give either a token budget or an edge fraction");
  }
  if (cfg.edge_fraction &&
      !(*cfg.edge_fraction > 0.0 && *cfg.edge_fraction <= 1.0)) {
    throw ConfigError("edge fraction must be in (0, 1]");
  }
  if (!(cfg.chars_per_token > 0.0)) {
    throw ConfigError("chars per token must be positive");
  }
  if (cfg.max_cluster_size && *cfg.max_cluster_size < 2) {
    throw ConfigError("max cluster size must be at least 2");
  }
  if (!cfg.max_cluster_size && cfg.token_limit == 0) {
    throw ConfigError("token limit must be positive");
  }
}

Graph load_preprocessed(const std::filesystem::path& edges,
                        const std::optional<std::filesystem::path>& nodes,
                        double chars_per_token) {
  return largest_connected_component(load(edges, nodes, chars_per_token));
}

Graph load_full(const std::filesystem::path& edges,
                const std::optional<std::filesystem::path>& nodes,
                double chars_per_token) {
  return remove_self_loops(load(edges, nodes, chars_per_token));
}

PipelineArtifacts run_pipeline(const PipelineConfig& cfg) {
  stage("config", [&] { validate(cfg); });
  const Graph g = stage("load", [&] {
    return load_preprocessed(cfg.edges, cfg.nodes, cfg.chars_per_token);
  });

  PipelineArtifacts out;
  stage("output", [&] {
    std::filesystem::create_directories(cfg.out_dir);
    out.decomposition = cfg.out_dir / "decomposition.json";
    out.hierarchy = cfg.out_dir / "hierarchy.json";
    out.merged = cfg.out_dir / "hierarchy_merged.json";
    out.merge_report = cfg.out_dir / "merge_report.json";
    out.stats = cfg.out_dir / "stats.json";
    out.sample = cfg.out_dir / "sample.tsv";
  });

  const CoreDecomposition cores = stage("decompose", [&] {
    auto c = core_numbers(g);
    write_file(out.decomposition, dump(to_json(g, c)));
    return c;
  });

  const Hierarchy h = stage("hierarchy", [&] {
    const std::size_t m = cfg.max_cluster_size
                              ? *cfg.max_cluster_size
                              : derive_max_cluster_size(cfg.token_limit, g);
    auto built = build_hierarchy(g, cores, m);
    write_file(out.hierarchy, dump(to_json(g, built)));
    return built;
  });

  const MergeResult merged = stage("merge", [&] {
    auto r = merge_small_clusters(g, h, cfg.merge_mode);
    write_file(out.merged, dump(to_json(g, r.hierarchy)));
    write_file(out.merge_report,
               dump(to_json(r.report, h.clusters.size(),
                            r.hierarchy.clusters.size())));
    return r;
  });

  const SampleResult sample = stage("sample", [&] {
    EdgeCosts costs = default_edge_costs(g, cfg.relation_overhead);
    if (cfg.costs) {
      auto in = open_in(*cfg.costs);
      costs = read_edge_costs(in, g, std::move(costs), cfg.costs->string());
    }
    const auto ranked = rank_leaf_edges(merged.hierarchy, g);
    const std::uint64_t budget =
        cfg.token_budget
            ? *cfg.token_budget
            : budget_for_edge_fraction(
                  ranked, g, costs, cfg.edge_fraction.value_or(kDefaultEdgeFraction));
    auto s = rrtc_sample(ranked, costs, budget);
    std::ofstream tsv(out.sample, std::ios::binary);
    if (!tsv) throw InputError("cannot write " + out.sample.string());
    write_sample_tsv(tsv, g, s);
    return s;
  });

  stage("stats", [&] {
    Json j = Json::object();
    for (const auto& [key, hier] :
         {std::pair<const char*, const Hierarchy*>{"rkh", &h},
          {"merged", &merged.hierarchy}}) {
      const SampleResult* s = hier == &merged.hierarchy ? &sample : nullptr;
      j[key] = {
          {"lf", to_json(community_stats(*hier, LevelSelector::leaf(), g, s))},
          {"l1", to_json(community_stats(*hier, LevelSelector::l1(), g, s))},
      };
    }
    j["sample"] = {{"budget", sample.budget},
                   {"total_tokens", sample.total_tokens},
                   {"edges", sample.selected.size()}};
    write_file(out.stats, dump(j));
  });
  return out;
}

}  // namespace kcrag
