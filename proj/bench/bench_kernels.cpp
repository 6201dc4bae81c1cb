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


// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>

#include "kcrag/core_decomposition.hpp"
#include "kcrag/fixture.hpp"
#include "kcrag/graph.hpp"
#include "kcrag/modularity.hpp"

namespace {

using namespace kcrag;

const Graph& kg(std::size_t n) {
  static std::map<std::size_t, Graph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, largest_connected_component(
                              generate_kg_sparse(n, 7).graph())).first;
  }
  return it->second;
}

Graph small_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < NodeId(n); ++i) edges.emplace_back(i, NodeId((i + 1) % n));
  for (NodeId i = 0; i + 3 < NodeId(n); i += 2) edges.emplace_back(i, NodeId(i + 3));
  return Graph::from_edges(n, edges);
}

void BM_CoreSerial(benchmark::State& st) {
  const Graph& g = kg(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(core_numbers(g));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_CoreParallel(benchmark::State& st) {
  const Graph& g = kg(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(core_numbers_parallel(g));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

void BM_HistogramSerial(benchmark::State& st) {
  const Graph g = small_graph(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(modularity_histogram(g));
}

void BM_HistogramParallel(benchmark::State& st) {
  const Graph g = small_graph(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(modularity_histogram_parallel(g));
}

}  // namespace

BENCHMARK(BM_CoreSerial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoreParallel)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramSerial)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramParallel)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
