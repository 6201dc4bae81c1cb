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

#include "kcrag/core_decomposition.hpp"

#include <algorithm>

namespace kcrag {
namespace {

CoreDecomposition finish(std::vector<CoreNumber> core) {
  CoreDecomposition out;
  out.core = std::move(core);
  for (NodeId v = 0; v < out.core.size(); ++v) {
    out.max_core = std::max(out.max_core, out.core[v]);
    out.shells[out.core[v]].push_back(v);
  }
  return out;
}

}  // namespace

CoreDecomposition core_numbers(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (n == 0) return {};

  std::vector<CoreNumber> deg(n);
  CoreNumber max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[v] = static_cast<CoreNumber>(g.degree(v));
    max_deg = std::max(max_deg, deg[v]);
  }

  // bin[d] = first position of degree-d nodes in `order`.
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (NodeId v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (CoreNumber d = 0; d <= max_deg; ++d) {
    std::size_t count = bin[d];
    bin[d] = start;
    start += count;
  }
  std::vector<NodeId> order(n);
  std::vector<std::size_t> pos(n);
  for (NodeId v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    order[pos[v]] = v;
  }
  for (CoreNumber d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    NodeId v = order[i];
    for (NodeId u : g.neighbors(v)) {
      if (deg[u] > deg[v]) {
        // Swap u with the first node of its bin, then shrink that bin.
        CoreNumber du = deg[u];
        std::size_t pu = pos[u];
        std::size_t pw = bin[du];
        NodeId w = order[pw];
        if (u != w) {
          pos[u] = pw;
          order[pu] = w;
          pos[w] = pu;
          order[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return finish(std::move(deg));
}

CoreDecomposition core_numbers_parallel(const Graph& g) {
  const std::int64_t n = static_cast<std::int64_t>(g.num_nodes());
  if (n == 0) return {};

  std::vector<CoreNumber> est(static_cast<std::size_t>(n));
  std::vector<CoreNumber> next(static_cast<std::size_t>(n));
  for (std::int64_t v = 0; v < n; ++v) {
    est[v] = static_cast<CoreNumber>(g.degree(static_cast<NodeId>(v)));
  }

  bool changed = true;
  while (changed) {
    changed = false;
#pragma omp parallel reduction(|| : changed)
    {
      std::vector<std::uint32_t> count;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t v = 0; v < n; ++v) {
        auto nbrs = g.neighbors(static_cast<NodeId>(v));
        const CoreNumber cap = est[v];
        // h-index of neighbour estimates, capped by the current estimate
        // (estimates only decrease).
        count.assign(cap + 1, 0);
        for (NodeId u : nbrs) ++count[std::min(est[u], cap)];
        CoreNumber h = cap;
        std::uint32_t at_least = count[cap];
        while (h > 0 && at_least < h) {
          --h;
          at_least += count[h];
        }
        next[v] = h;
        if (h != cap) changed = true;
      }
    }
    est.swap(next);
  }
  return finish(std::move(est));
}

}  // namespace kcrag
