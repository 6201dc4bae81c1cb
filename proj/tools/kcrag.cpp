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

// kcrag command-line front end.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "kcrag/core_decomposition.hpp"
#include "kcrag/error.hpp"
#include "kcrag/fixture.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/merging.hpp"
#include "kcrag/modularity.hpp"
#include "kcrag/pipeline.hpp"
#include "kcrag/serialize.hpp"
#include "kcrag/stats.hpp"
#include "kcrag/token_sampling.hpp"

namespace fs = std::filesystem;
using namespace kcrag;

namespace {

struct Globals {
  std::string edges;
  std::string nodes;
  std::string out;
  std::uint64_t seed = 1;
  double chars_per_token = 4.0;
};

struct HierarchyOpts {
  std::optional<std::size_t> max_cluster_size;
  std::uint64_t token_limit = kDefaultTokenLimit;
  std::string hierarchy_in;
};

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

void require_edges(const Globals& g) {
  if (g.edges.empty()) throw ConfigError("--edges is required");
}

Graph load_lcc(const Globals& g) {
  require_edges(g);
  return load_preprocessed(g.edges, opt_path(g.nodes), g.chars_per_token);
}

// Writes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out) throw InputError("cannot write " + g.out);
  out << text;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::size_t resolve_m(const HierarchyOpts& o, const Graph& g) {
  if (o.max_cluster_size) {
    if (*o.max_cluster_size < 2) {
      throw ConfigError("--max-cluster-size must be at least 2");
    }
    return *o.max_cluster_size;
  }
  return derive_max_cluster_size(o.token_limit, g);
}

Hierarchy obtain_hierarchy(const HierarchyOpts& o, const Graph& g) {
  if (!o.hierarchy_in.empty()) {
    return hierarchy_from_json(read_json(o.hierarchy_in), g);
  }
  return build_hierarchy(g, resolve_m(o, g));
}

void add_hierarchy_opts(CLI::App* cmd, HierarchyOpts& o, bool allow_input) {
  cmd->add_option("--max-cluster-size", o.max_cluster_size,
                  "Cluster size cap M (overrides --token-limit)");
  cmd->add_option("--token-limit", o.token_limit,
                  "Context token limit used to derive M");
  if (allow_input) {
    cmd->add_option("--hierarchy", o.hierarchy_in,
                    "Existing hierarchy JSON instead of building one");
  }
}

MergeMode parse_mode(const std::string& s) {
  auto m = merge_mode_from_string(s);
  if (!m) throw ConfigError("unknown merge mode '" + s + "'");
  return *m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-core community hierarchies for graph retrieval"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals gl;
  app.add_option("--edges", gl.edges, "Edge list TSV (src, dst[, weight])");
  app.add_option("--nodes", gl.nodes, "Node JSONL (id, label, tokens, text)");
  app.add_option("--out", gl.out, "Output file or directory");
  app.add_option("--seed", gl.seed, "Random seed");
  app.add_option("--chars-per-token", gl.chars_per_token,
                 "Characters per token when estimating from text");

  // decompose
  auto* decompose = app.add_subcommand("decompose", "Core numbers of the LCC");
  bool parallel_cores = false;
  decompose->add_flag("--parallel", parallel_cores, "Use the OpenMP kernel");

  // hierarchy
  auto* hierarchy = app.add_subcommand("hierarchy", "Build the k-core hierarchy");
  HierarchyOpts hopts;
  add_hierarchy_opts(hierarchy, hopts, false);

  // merge
  auto* merge = app.add_subcommand("merge", "Merge size-2 leaf clusters");
  std::string mode = "m2hc";
  std::string report_path;
  add_hierarchy_opts(merge, hopts, true);
  merge->add_option("--mode", mode, "m2hc or mrc");
  merge->add_option("--report", report_path, "Write the merge report here");

  // sample
  auto* sample = app.add_subcommand("sample", "Round-robin edge sampling");
  std::optional<std::uint64_t> token_budget;
  std::optional<double> edge_fraction;
  std::string costs_path;
  std::uint64_t overhead = kDefaultRelationOverhead;
  add_hierarchy_opts(sample, hopts, true);
  auto* budget_opt =
      sample->add_option("--token-budget", token_budget, "Token budget");
  sample->add_option("--edge-fraction", edge_fraction,
                     "Budget as the cost of this fraction of ranked edges")
      ->excludes(budget_opt);
  sample->add_option("--costs", costs_path, "Edge cost TSV (src, dst, cost)");
  sample->add_option("--relation-overhead", overhead,
                     "Tokens added per edge on top of its endpoints");

  // stats
  auto* stats = app.add_subcommand("stats", "Community statistics");
  std::string level = "lf";
  add_hierarchy_opts(stats, hopts, true);
  stats->add_option("--level", level, "lf, l1 or a level number");

  // degeneracy
  auto* degeneracy =
      app.add_subcommand("degeneracy", "Exhaustive modularity degeneracy");
  std::optional<double> epsilon;
  std::uint32_t d = 1;
  bool serial_enum = false;
  degeneracy->add_option("--epsilon", epsilon,
                         "Tolerance (default: proof threshold)");
  degeneracy->add_option("--d", d, "Low-degree cutoff");
  degeneracy->add_flag("--serial", serial_enum, "Single-threaded enumeration");

  // verify-bounds
  auto* verify =
      app.add_subcommand("verify-bounds", "Check the sparse-graph bounds");
  SparseBoundsOptions vopts;
  verify->add_option("--d", d, "Low-degree cutoff");
  verify->add_option("--partitions", vopts.random_partitions,
                     "Random partitions to sample");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage");
  add_hierarchy_opts(pipeline, hopts, false);
  pipeline->add_option("--mode", mode, "m2hc or mrc");
  auto* pbudget =
      pipeline->add_option("--token-budget", token_budget, "Token budget");
  pipeline->add_option("--edge-fraction", edge_fraction, "Edge fraction")
      ->excludes(pbudget);
  pipeline->add_option("--costs", costs_path, "Edge cost TSV");
  pipeline->add_option("--relation-overhead", overhead, "Per-edge overhead");

  // gen-fixture
  auto* gen = app.add_subcommand("gen-fixture", "Write a synthetic graph");
  std::size_t n = 1000;
  std::string profile = "kg_sparse";
  gen->add_option("--n", n, "Node count");
  gen->add_option("--profile", profile, "kg_sparse or figure1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::kConfig);
  }

  try {
    if (*decompose) {
      const Graph g = load_lcc(gl);
      const auto c = parallel_cores ? core_numbers_parallel(g) : core_numbers(g);
      emit(gl, dump(to_json(g, c)));
    } else if (*hierarchy) {
      const Graph g = load_lcc(gl);
      emit(gl, dump(to_json(g, build_hierarchy(g, resolve_m(hopts, g)))));
    } else if (*merge) {
      const Graph g = load_lcc(gl);
      const Hierarchy h = obtain_hierarchy(hopts, g);
      const auto r = merge_small_clusters(g, h, parse_mode(mode));
      if (!report_path.empty()) {
        std::ofstream rep(report_path, std::ios::binary);
        if (!rep) throw InputError("cannot write " + report_path);
        rep << dump(to_json(r.report, h.clusters.size(),
                            r.hierarchy.clusters.size()));
      }
      emit(gl, dump(to_json(g, r.hierarchy)));
    } else if (*sample) {
      const Graph g = load_lcc(gl);
      const Hierarchy h = obtain_hierarchy(hopts, g);
      EdgeCosts costs = default_edge_costs(g, overhead);
      if (!costs_path.empty()) {
        std::ifstream in(costs_path);
        if (!in) throw InputError("cannot read " + costs_path);
        costs = read_edge_costs(in, g, std::move(costs), costs_path);
      }
      const auto ranked = rank_leaf_edges(h, g);
      const std::uint64_t budget =
          token_budget ? *token_budget
                       : budget_for_edge_fraction(
                             ranked, g, costs,
                             edge_fraction.value_or(kDefaultEdgeFraction));
      std::ostringstream tsv;
      write_sample_tsv(tsv, g, rrtc_sample(ranked, costs, budget));
      emit(gl, tsv.str());
    } else if (*stats) {
      const Graph g = load_lcc(gl);
      const Hierarchy h = obtain_hierarchy(hopts, g);
      auto sel = level_selector_from_string(level);
      if (!sel) throw ConfigError("unknown level '" + level + "'");
      const auto ranked = rank_leaf_edges(h, g);
      const EdgeCosts costs = default_edge_costs(g);
      const auto s = rrtc_sample(
          ranked, costs,
          budget_for_edge_fraction(ranked, g, costs, kDefaultEdgeFraction));
      emit(gl, dump(to_json(community_stats(h, *sel, g, &s))));
    } else if (*degeneracy) {
      require_edges(gl);
      const Graph g = load_full(gl.edges, opt_path(gl.nodes), gl.chars_per_token);
      const double eps = epsilon ? *epsilon : proof_threshold(d, g);
      emit(gl, dump(to_json(enumerate_degeneracy(g, eps, d, !serial_enum))));
    } else if (*verify) {
      require_edges(gl);
      const Graph g = load_full(gl.edges, opt_path(gl.nodes), gl.chars_per_token);
      vopts.seed = gl.seed;
      const auto report = verify_sparse_bounds(g, d, vopts);
      emit(gl, dump(to_json(report)));
      if (!report.ok()) {
        std::cerr << "kcrag: bound violated\n";
        return static_cast<int>(ErrorKind::kVerification);
      }
    } else if (*pipeline) {
      require_edges(gl);
      if (gl.out.empty()) throw ConfigError("--out directory is required");
      PipelineConfig cfg;
      cfg.edges = gl.edges;
      cfg.nodes = opt_path(gl.nodes);
      cfg.costs = opt_path(costs_path);
      cfg.out_dir = gl.out;
      cfg.token_limit = hopts.token_limit;
      cfg.chars_per_token = gl.chars_per_token;
      cfg.max_cluster_size = hopts.max_cluster_size;
      cfg.merge_mode = parse_mode(mode);
      cfg.token_budget = token_budget;
      cfg.edge_fraction = edge_fraction;
      cfg.relation_overhead = overhead;
      run_pipeline(cfg);
    } else if (*gen) {
      if (gl.out.empty()) throw ConfigError("--out directory is required");
      Fixture f;
      if (profile == "kg_sparse") {
        f = generate_kg_sparse(n, gl.seed);
      } else if (profile == "figure1") {
        f = figure1_fixture();
      } else {
        throw ConfigError("unknown profile '" + profile + "'");
      }
      fs::create_directories(gl.out);
      std::ofstream e(fs::path(gl.out) / "edges.tsv", std::ios::binary);
      std::ofstream v(fs::path(gl.out) / "nodes.jsonl", std::ios::binary);
      if (!e || !v) throw InputError("cannot write into " + gl.out);
      write_edge_tsv(e, f.edges);
      write_node_jsonl(v, f.nodes);
    }
  } catch (const Error& e) {
    std::cerr << "kcrag: " << e.what() << '\n';
    return e.exit_code();
  } catch (const fs::filesystem_error& e) {
    std::cerr << "kcrag: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::kInput);
  }
  return 0;
}
