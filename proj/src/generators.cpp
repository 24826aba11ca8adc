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

#include "hone/generators.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hone {

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  if (n >= 2 && p > 0.0) {
    edges.reserve(static_cast<std::size_t>(p * n * (n - 1) / 2 * 1.1) + 16);
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (p >= 1.0) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  } else if (p > 0.0) {
    // Batagelj–Brandes: walk the lower triangle (v > w) with geometric gaps.
    const double log_q = std::log1p(-p);
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      double r = unif(rng);
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(n, edges);
}

Graph stochastic_block_model(const std::vector<std::size_t>& block_sizes, double p_in,
                             double p_out, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> start(block_sizes.size() + 1, 0);
  for (std::size_t b = 0; b < block_sizes.size(); ++b) start[b + 1] = start[b] + block_sizes[b];
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::size_t> block_of(start.back());
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    for (std::size_t u = start[b]; u < start[b + 1]; ++u) block_of[u] = b;
  for (std::size_t u = 0; u < start.back(); ++u) {
    for (std::size_t v = u + 1; v < start.back(); ++v) {
      double p = block_of[u] == block_of[v] ? p_in : p_out;
      if (unif(rng) < p) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(start.back(), edges);
}

Graph complete_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < n; ++i) edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t leaves) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
  return Graph::from_edges(leaves + 1, edges);
}

Graph petersen_graph() {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return Graph::from_edges(10, edges);
}

Graph permute_nodes(const Graph& g, const std::vector<NodeId>& perm) {
  if (perm.size() != g.num_nodes()) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(g.num_edges());
  for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  std::vector<std::int64_t> labels(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) labels[perm[u]] = g.label(u);
  return Graph::from_edges(g.num_nodes(), edges, std::move(labels));
}

}  // namespace hone
