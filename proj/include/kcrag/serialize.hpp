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

#ifndef KCRAG_SERIALIZE_HPP_
#define KCRAG_SERIALIZE_HPP_

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "kcrag/core_decomposition.hpp"
#include "kcrag/graph.hpp"
#include "kcrag/hierarchy.hpp"
#include "kcrag/merging.hpp"
#include "kcrag/modularity.hpp"
#include "kcrag/stats.hpp"
#include "kcrag/token_sampling.hpp"

namespace kcrag {

using Json = nlohmann::json;

// Objects keep keys sorted; two-space indent plus trailing newline.
std::string dump(const Json& j);

Json to_json(const Graph& g, const CoreDecomposition& cores);
Json to_json(const Graph& g, const Hierarchy& h);
Json to_json(const MergeReport& report, std::size_t clusters_before,
             std::size_t clusters_after);
Json to_json(const CommunityStats& stats);
Json to_json(const DegeneracyReport& report);
Json to_json(const SparseBoundsReport& report);

// Inverse of to_json(g, h). Throws InputError on unknown node ids or a
// malformed document.
Hierarchy hierarchy_from_json(const Json& j, const Graph& g);

// src<TAB>dst<TAB>community<TAB>cost, one line per selected edge in
// selection order.
void write_sample_tsv(std::ostream& out, const Graph& g,
                      const SampleResult& sample);

}  // namespace kcrag

#endif  // KCRAG_SERIALIZE_HPP_
