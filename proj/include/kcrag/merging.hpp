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

#ifndef KCRAG_MERGING_HPP_
#define KCRAG_MERGING_HPP_

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "kcrag/graph.hpp"
#include "kcrag/hierarchy.hpp"

namespace kcrag {

enum class MergeMode {
  kTwoHopOnly,          // M2hC
  kResidualAndTwoHop,   // MRC
};

std::string_view to_string(MergeMode mode);
std::optional<MergeMode> merge_mode_from_string(std::string_view s);

struct MergeReport {
  MergeMode mode = MergeMode::kTwoHopOnly;
  std::vector<std::pair<ClusterId, ClusterId>> merged;  // small -> host
  std::vector<ClusterId> promoted;
  // Inner clusters removed because every child was merged away.
  std::vector<ClusterId> dissolved;

  friend bool operator==(const MergeReport&, const MergeReport&) = default;
};

struct MergeResult {
  Hierarchy hierarchy;
  MergeReport report;
};

// Leaf clusters of exactly two nodes whose kind `mode` makes eligible.
bool is_merge_eligible(const Cluster& c, MergeMode mode);

// Folds eligible size-2 leaf clusters into neighbouring leaf clusters, one at
// a time: the small cluster with the most edges into the current host set
// goes first and joins the host it shares the most edges with. A small
// cluster without such edges is kept and becomes a host itself. Ties go to
// the smallest cluster id. Merged clusters disappear from the result, as do
// inner clusters left without children.
MergeResult merge_small_clusters(const Graph& g, const Hierarchy& h,
                                 MergeMode mode);

}  // namespace kcrag

#endif  // KCRAG_MERGING_HPP_
