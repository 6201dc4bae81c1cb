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

#ifndef KCRAG_PIPELINE_HPP_
#define KCRAG_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "kcrag/graph.hpp"
#include "kcrag/merging.hpp"
#include "kcrag/token_sampling.hpp"

namespace kcrag {

inline constexpr double kDefaultEdgeFraction = 0.8;

struct PipelineConfig {
  std::filesystem::path edges;
  std::optional<std::filesystem::path> nodes;
  std::optional<std::filesystem::path> costs;
  std::filesystem::path out_dir;

  std::uint64_t token_limit = kDefaultTokenLimit;
  double chars_per_token = 4.0;
  // Overrides the token-limit derivation when set.
  std::optional<std::size_t> max_cluster_size;
  MergeMode merge_mode = MergeMode::kTwoHopOnly;
  // At most one of these; neither means kDefaultEdgeFraction.
  std::optional<std::uint64_t> token_budget;
  std::optional<double> edge_fraction;
  std::uint64_t relation_overhead = kDefaultRelationOverhead;
};

// Throws ConfigError on inconsistent settings.
void validate(const PipelineConfig& cfg);

// Reads the edge TSV and optional node JSONL and keeps the largest connected
// component.
Graph load_preprocessed(const std::filesystem::path& edges,
                        const std::optional<std::filesystem::path>& nodes,
                        double chars_per_token);

// Edge file plus optional node file, self-loops dropped, no component
// filtering.
Graph load_full(const std::filesystem::path& edges,
                const std::optional<std::filesystem::path>& nodes,
                double chars_per_token);

struct PipelineArtifacts {
  std::filesystem::path decomposition;    // decomposition.json
  std::filesystem::path hierarchy;        // hierarchy.json
  std::filesystem::path merged;           // hierarchy_merged.json
  std::filesystem::path merge_report;     // merge_report.json
  std::filesystem::path stats;            // stats.json
  std::filesystem::path sample;           // sample.tsv
};

// Preprocess, decompose, build the hierarchy, merge, sample and summarise.
// Errors are rethrown with the failing stage prefixed to the message.
PipelineArtifacts run_pipeline(const PipelineConfig& cfg);

}  // namespace kcrag

#endif  // KCRAG_PIPELINE_HPP_
