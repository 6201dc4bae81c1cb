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

#include "kcrag/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <string>

#include "json.hpp"
#include "kcrag/error.hpp"

namespace kcrag {

std::size_t utf8_length(std::string_view text) {
  return static_cast<std::size_t>(std::count_if(
      text.begin(), text.end(),
      [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::uint64_t TokenModel::estimate(std::string_view text) const {
  const std::size_t chars = utf8_length(text);
  if (chars == 0) return 0;
  return static_cast<std::uint64_t>(
      std::ceil(static_cast<double>(chars) / chars_per_token));
}

Graph::Graph(std::vector<NodeMeta> meta, std::span<const Edge> edges)
    : meta_(std::move(meta)), self_loop_(meta_.size(), 0) {
  const std::size_t n = meta_.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (!(meta_[i - 1].external_id < meta_[i].external_id)) {
      throw InputError("node ids must be unique and sorted: '" +
                       meta_[i].external_id + "'");
    }
  }
  std::vector<std::size_t> deg(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) {
      self_loop_[u] = 1;
      continue;
    }
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::size_t> raw_offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) raw_offsets[i + 1] = raw_offsets[i] + deg[i];
  std::vector<NodeId> raw(raw_offsets[n]);
  std::vector<std::size_t> fill(raw_offsets.begin(), raw_offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[fill[u]++] = v;
    raw[fill[v]++] = u;
  }
  offsets_.assign(n + 1, 0);
  targets_.reserve(raw.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(raw_offsets[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    targets_.insert(targets_.end(), first, last);
    offsets_[i + 1] = targets_.size();
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  std::vector<NodeMeta> meta(n);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(n).size());
  for (std::size_t i = 0; i < n; ++i) {
    std::string digits = std::to_string(i);
    meta[i].external_id = "v" + std::string(width - digits.size(), '0') + digits;
  }
  return Graph(std::move(meta), edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

double Graph::average_degree() const {
  if (empty()) return 0.0;
  return 2.0 * static_cast<double>(num_edges()) /
         static_cast<double>(num_nodes());
}

std::optional<NodeId> Graph::find(std::string_view external_id) const {
  auto it = std::lower_bound(
      meta_.begin(), meta_.end(), external_id,
      [](const NodeMeta& m, std::string_view id) { return m.external_id < id; });
  if (it == meta_.end() || it->external_id != external_id) return std::nullopt;
  return static_cast<NodeId>(it - meta_.begin());
}

std::size_t Graph::num_self_loops() const {
  return static_cast<std::size_t>(
      std::count(self_loop_.begin(), self_loop_.end(), std::uint8_t{1}));
}

std::vector<Edge> Graph::edge_list() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Graph load_graph(std::span<const EdgeRecord> edge_records,
                 std::span<const NodeMeta> node_records) {
  std::map<std::string, NodeMeta, std::less<>> by_id;
  for (const auto& rec : node_records) {
    if (!by_id.emplace(rec.external_id, rec).second) {
      throw InputError("duplicate node id '" + rec.external_id + "'");
    }
  }
  for (const auto& e : edge_records) {
    for (const std::string* id : {&e.src, &e.dst}) {
      if (!by_id.contains(*id)) by_id.emplace(*id, NodeMeta{*id, "", 0});
    }
  }
  if (by_id.empty()) throw InputError("empty input: graph has no nodes");

  std::vector<NodeMeta> meta;
  meta.reserve(by_id.size());
  for (auto& [id, m] : by_id) meta.push_back(std::move(m));

  auto index_of = [&meta](const std::string& id) {
    auto it = std::lower_bound(
        meta.begin(), meta.end(), id,
        [](const NodeMeta& m, const std::string& key) {
          return m.external_id < key;
        });
    return static_cast<NodeId>(it - meta.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(edge_records.size());
  for (const auto& e : edge_records) {
    edges.emplace_back(index_of(e.src), index_of(e.dst));
  }
  return Graph(std::move(meta), edges);
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.num_nodes(), kAbsent);
  std::vector<NodeMeta> meta;
  meta.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    local[nodes[i]] = static_cast<NodeId>(i);
    meta.push_back(g.meta(nodes[i]));
  }
  std::vector<Edge> edges;
  for (NodeId u : nodes) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v && local[v] != kAbsent) edges.emplace_back(local[u], local[v]);
    }
  }
  return Graph(std::move(meta), edges);
}

Graph remove_self_loops(const Graph& g) {
  std::vector<NodeId> all(g.num_nodes());
  std::iota(all.begin(), all.end(), NodeId{0});
  return induced_subgraph(g, all);
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> comps;
  std::vector<std::uint8_t> seen(g.num_nodes(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (NodeId v : g.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph largest_connected_component(const Graph& g) {
  if (g.empty()) throw InputError("empty input: graph has no nodes");
  auto comps = connected_components(g);
  // Components come out ordered by smallest member, so the first of the
  // largest size also holds the smallest external id among them.
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size()) best = i;
  }
  return induced_subgraph(g, comps[best]);
}

namespace {

std::string_view trim_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

}  // namespace

std::vector<EdgeRecord> read_edge_tsv(std::istream& in,
                                      std::string_view source) {
  std::vector<EdgeRecord> out;
  std::string buf;
  std::size_t line_no = 0;
  while (std::getline(in, buf)) {
    ++line_no;
    std::string_view line = trim_cr(buf);
    if (is_blank(line) || line.front() == '#') continue;
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      fields.push_back(line.substr(start, tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(std::string(source), line_no,
                       "expected 2 or 3 tab-separated columns, got " +
                           std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(std::string(source), line_no, "empty node id");
    }
    if (fields.size() == 3) {
      double weight = 0.0;
      auto w = fields[2];
      auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
      if (ec != std::errc() || ptr != w.data() + w.size()) {
        throw ParseError(std::string(source), line_no,
                         "non-numeric weight '" + std::string(w) + "'");
      }
    }
    out.push_back({std::string(fields[0]), std::string(fields[1])});
  }
  return out;
}

std::vector<NodeMeta> read_node_jsonl(std::istream& in, const TokenModel& model,
                                      std::string_view source) {
  using nlohmann::json;
  std::vector<NodeMeta> out;
  std::string buf;
  std::size_t line_no = 0;
  while (std::getline(in, buf)) {
    ++line_no;
    std::string_view line = trim_cr(buf);
    if (is_blank(line)) continue;
    auto fail = [&](const std::string& msg) {
      return ParseError(std::string(source), line_no, msg);
    };
    json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (obj.is_discarded()) throw fail("invalid JSON");
    if (!obj.is_object()) throw fail("expected a JSON object");
    auto id = obj.find("id");
    if (id == obj.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw fail("missing string key 'id'");
    }
    NodeMeta meta;
    meta.external_id = id->get<std::string>();
    if (auto it = obj.find("label"); it != obj.end()) {
      if (!it->is_string()) throw fail("'label' must be a string");
      meta.label = it->get<std::string>();
    }
    auto tokens = obj.find("tokens");
    auto text = obj.find("text");
    if (text != obj.end() && !text->is_string()) {
      throw fail("'text' must be a string");
    }
    if (tokens != obj.end()) {
      if (!tokens->is_number_unsigned()) {
        throw fail("'tokens' must be a non-negative integer");
      }
      meta.token_count = tokens->get<std::uint64_t>();
    } else if (text != obj.end()) {
      meta.token_count = model.estimate(text->get<std::string>());
    }
    out.push_back(std::move(meta));
  }
  return out;
}

}  // namespace kcrag
