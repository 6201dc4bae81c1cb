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

#ifndef KCRAG_CORE_DECOMPOSITION_HPP_
#define KCRAG_CORE_DECOMPOSITION_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "kcrag/graph.hpp"

namespace kcrag {

using CoreNumber = std::uint32_t;

struct CoreDecomposition {
  std::vector<CoreNumber> core;  // indexed by NodeId
  CoreNumber max_core = 0;
  std::map<CoreNumber, std::vector<NodeId>> shells;  // members sorted

  friend bool operator==(const CoreDecomposition&,
                         const CoreDecomposition&) = default;
};

// Bucket peeling (Batagelj-Zaversnik), O(n + m). Serial reference.
CoreDecomposition core_numbers(const Graph& g);

// Jacobi-style h-index iteration run with OpenMP: each round replaces every
// estimate with the h-index of its neighbours' estimates, starting from the
// degrees. Converges to the same core numbers as peeling; the result does not
// depend on the thread count.
CoreDecomposition core_numbers_parallel(const Graph& g);

}  // namespace kcrag

#endif  // KCRAG_CORE_DECOMPOSITION_HPP_
