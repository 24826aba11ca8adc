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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hone {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable undirected simple graph in compressed adjacency form.
//
// Edges are stored once with u < v, numbered in lexicographic (u, v) order,
// and mirrored in both endpoints' neighbor lists. Neighbor lists are sorted
// strictly ascending. Each node keeps the label it had in the input.
class Graph {
 public:
  Graph() = default;

  // Builds a canonical graph on `num_nodes` nodes. Self-loops are dropped and
  // duplicate or reversed pairs collapse to one edge. Endpoints must be
  // < num_nodes. If `labels` is empty nodes are labelled 0..N-1.
  static Graph from_edges(std::size_t num_nodes,
                          std::span<const std::pair<NodeId, NodeId>> edges,
                          std::vector<std::int64_t> labels = {});

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const;

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], degree(u)};
  }
  // Edge ids parallel to neighbors(u).
  std::span<const EdgeId> incident_edges(NodeId u) const {
    return {adjacency_edge_.data() + offsets_[u], degree(u)};
  }

  const std::pair<NodeId, NodeId>& edge(EdgeId e) const { return edges_[e]; }
  std::span<const std::pair<NodeId, NodeId>> edges() const { return edges_; }

  std::optional<EdgeId> edge_index(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return edge_index(u, v).has_value(); }

  std::int64_t label(NodeId u) const { return labels_[u]; }
  std::span<const std::int64_t> labels() const { return labels_; }

  // FNV-1a over (N, edge list); binds derived tables to this graph.
  std::uint64_t fingerprint() const { return fingerprint_; }

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> adjacency_edge_;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::int64_t> labels_;
  std::uint64_t fingerprint_ = 0;
};

struct EdgeListOptions {
  bool one_indexed = false;
  // Skip the first non-comment line (MatrixMarket size line).
  bool skip_header = false;
};

// Reads "u v [ignored...]" lines. Lines starting with '%' or '#' are
// comments. Node labels are compacted to [0, N) in ascending label order.
Graph load_edge_list(std::istream& in, const EdgeListOptions& options = {});
Graph load_edge_list_file(const std::string& path, const EdgeListOptions& options = {});

// Writes one "label_u label_v" line per edge, plus "label label" for nodes
// without edges so that reloading reproduces the same node set.
void write_edge_list(const Graph& g, std::ostream& out);

std::size_t degree(const Graph& g, NodeId u);

// N(u) ∩ N(v), ascending.
std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v);

}  // namespace hone
