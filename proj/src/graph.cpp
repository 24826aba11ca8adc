// Copyright 2026 The hone Authors
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

#include "hone/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hone {

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xffU;
    h *= kFnvPrime;
  }
  return h;
}

bool parse_int(std::string_view token, std::int64_t& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

Graph Graph::from_edges(std::size_t num_nodes,
                        std::span<const std::pair<NodeId, NodeId>> edges,
                        std::vector<std::int64_t> labels) {
  Graph g;
  g.edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= num_nodes || v >= num_nodes) {
      throw std::out_of_range("edge endpoint exceeds node count");
    }
    if (u == v) continue;
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  g.offsets_.assign(num_nodes + 1, 0);
  for (auto [u, v] : g.edges_) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < num_nodes; ++i) g.offsets_[i + 1] += g.offsets_[i];

  g.adjacency_.resize(2 * g.edges_.size());
  g.adjacency_edge_.resize(2 * g.edges_.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling in edge order leaves every
  // neighbor list ascending: for node x, neighbors w < x arrive through
  // edges (w, x) ordered by w, all before edges (x, w') ordered by w'.
  for (EdgeId e = 0; e < g.edges_.size(); ++e) {
    auto [u, v] = g.edges_[e];
    g.adjacency_[cursor[u]] = v;
    g.adjacency_edge_[cursor[u]++] = e;
    g.adjacency_[cursor[v]] = u;
    g.adjacency_edge_[cursor[v]++] = e;
  }

  if (labels.empty()) {
    labels.resize(num_nodes);
    for (std::size_t i = 0; i < num_nodes; ++i) labels[i] = static_cast<std::int64_t>(i);
  } else if (labels.size() != num_nodes) {
    throw std::invalid_argument("label count differs from node count");
  }
  g.labels_ = std::move(labels);

  std::uint64_t h = fnv_mix(kFnvOffset, num_nodes);
  for (auto [u, v] : g.edges_) h = fnv_mix(fnv_mix(h, u), v);
  g.fingerprint_ = h;
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (NodeId u = 0; u < num_nodes(); ++u) best = std::max(best, degree(u));
  return best;
}

std::optional<EdgeId> Graph::edge_index(NodeId u, NodeId v) const {
  if (u >= num_nodes() || v >= num_nodes() || u == v) return std::nullopt;
  if (degree(u) > degree(v)) std::swap(u, v);
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return incident_edges(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

Graph load_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  bool header_pending = options.skip_header;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '%' || line[first] == '#') continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::istringstream tokens(line);
    std::string a, b;
    if (!(tokens >> a >> b)) throw ParseError(line_no, "expected two node ids");
    std::int64_t u = 0, v = 0;
    if (!parse_int(a, u)) throw ParseError(line_no, "malformed node id '" + a + "'");
    if (!parse_int(b, v)) throw ParseError(line_no, "malformed node id '" + b + "'");
    if (u < 0 || v < 0) throw ParseError(line_no, "negative node id");
    if (options.one_indexed && (u == 0 || v == 0)) {
      throw ParseError(line_no, "node id 0 in one-indexed input");
    }
    raw.emplace_back(u, v);
  }

  std::vector<std::int64_t> labels;
  labels.reserve(2 * raw.size());
  for (auto [u, v] : raw) {
    labels.push_back(u);
    labels.push_back(v);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto dense = [&](std::int64_t label) {
    return static_cast<NodeId>(std::lower_bound(labels.begin(), labels.end(), label) -
                               labels.begin());
  };

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (auto [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  const std::size_t n = labels.size();
  Graph g = Graph::from_edges(n, edges, std::move(labels));
  if (g.num_edges() == 0) throw std::invalid_argument("edge list contains no edges");
  return g;
}

Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return load_edge_list(in, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (g.degree(u) == 0) out << g.label(u) << ' ' << g.label(u) << '\n';
  }
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

std::size_t degree(const Graph& g, NodeId u) { return g.degree(u); }

std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::vector<NodeId> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace hone
