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

#include "hone/motif_count.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "hone/factorize.hpp"

namespace hone {

std::string_view orbit_name(Orbit o) {
  switch (o) {
    case Orbit::kEdge: return "edge";
    case Orbit::kWedge: return "wedge";
    case Orbit::kTriangle: return "triangle";
    case Orbit::kPathEnd: return "path-end";
    case Orbit::kPathMiddle: return "path-middle";
    case Orbit::kStar: return "star";
    case Orbit::kCycle: return "cycle";
    case Orbit::kTailedTail: return "tailed-tail";
    case Orbit::kTailedAttached: return "tailed-attached";
    case Orbit::kTailedOpposite: return "tailed-opposite";
    case Orbit::kDiamondCycle: return "diamond-cycle";
    case Orbit::kDiamondChord: return "diamond-chord";
    case Orbit::kClique: return "clique";
  }
  return "?";
}

const std::array<Orbit, kNumOrbits>& all_orbits() {
  static const std::array<Orbit, kNumOrbits> orbits = [] {
    std::array<Orbit, kNumOrbits> out{};
    for (int i = 0; i < kNumOrbits; ++i) out[i] = orbit_from_id(i + 1);
    return out;
  }();
  return orbits;
}

namespace {

// Marker values for the neighborhood of the current edge (i, j).
enum Mark : std::uint8_t {
  kNone = 0,
  kOnlyI = 1,    // in X_i: adjacent to i, not to j
  kOnlyJ = 2,    // in X_j
  kCommon = 3,   // in C = N(i) ∩ N(j)
  kEndpoint = 4  // i or j themselves
};

std::uint64_t choose2(std::uint64_t n) { return n * (n - (n > 0 ? 1 : 0)) / 2; }

void count_range(const Graph& g, EdgeId first, EdgeId last, std::vector<OrbitRow>& rows) {
  std::vector<std::uint8_t> mark(g.num_nodes(), kNone);
  std::vector<NodeId> only_i, only_j, common;

  for (EdgeId e = first; e < last; ++e) {
    const auto [i, j] = g.edge(e);
    only_i.clear();
    only_j.clear();
    common.clear();

    for (NodeId w : g.neighbors(i)) mark[w] = kOnlyI;
    for (NodeId w : g.neighbors(j)) mark[w] = (mark[w] == kOnlyI) ? kCommon : kOnlyJ;
    mark[i] = kEndpoint;
    mark[j] = kEndpoint;
    for (NodeId w : g.neighbors(i)) {
      if (mark[w] == kOnlyI) only_i.push_back(w);
      else if (mark[w] == kCommon) common.push_back(w);
    }
    for (NodeId w : g.neighbors(j)) {
      if (mark[w] == kOnlyJ) only_j.push_back(w);
    }

    std::uint64_t clique = 0, diamond_cycle = 0, tailed_opposite = 0;
    for (NodeId u : common) {
      for (NodeId w : g.neighbors(u)) {
        switch (mark[w]) {
          case kCommon: clique += (w > u); break;
          case kOnlyI:
          case kOnlyJ: ++diamond_cycle; break;
          case kNone: ++tailed_opposite; break;
          default: break;
        }
      }
    }

    std::uint64_t cycle = 0, path_end = 0, side_links = 0;
    auto scan_side = [&](const std::vector<NodeId>& side, Mark own, Mark other) {
      for (NodeId u : side) {
        for (NodeId w : g.neighbors(u)) {
          const auto m = mark[w];
          if (m == own) side_links += (w > u);
          else if (m == other) cycle += (own == kOnlyI);  // count each (u, v) once
          else if (m == kNone) ++path_end;
        }
      }
    };
    scan_side(only_i, kOnlyI, kOnlyJ);
    scan_side(only_j, kOnlyJ, kOnlyI);

    const std::uint64_t c = common.size();
    const std::uint64_t xi = only_i.size();
    const std::uint64_t xj = only_j.size();

    OrbitRow& row = rows[e];
    row[orbit_index(Orbit::kEdge)] = 1;
    row[orbit_index(Orbit::kWedge)] = xi + xj;
    row[orbit_index(Orbit::kTriangle)] = c;
    row[orbit_index(Orbit::kPathEnd)] = path_end;
    row[orbit_index(Orbit::kPathMiddle)] = xi * xj - cycle;
    row[orbit_index(Orbit::kStar)] = choose2(xi) + choose2(xj) - side_links;
    row[orbit_index(Orbit::kCycle)] = cycle;
    row[orbit_index(Orbit::kTailedTail)] = side_links;
    row[orbit_index(Orbit::kTailedAttached)] = c * (xi + xj) - diamond_cycle;
    row[orbit_index(Orbit::kTailedOpposite)] = tailed_opposite;
    row[orbit_index(Orbit::kDiamondCycle)] = diamond_cycle;
    row[orbit_index(Orbit::kDiamondChord)] = choose2(c) - clique;
    row[orbit_index(Orbit::kClique)] = clique;

    for (NodeId w : g.neighbors(i)) mark[w] = kNone;
    for (NodeId w : g.neighbors(j)) mark[w] = kNone;
  }
}

}  // namespace

EdgeOrbitCounts count_edge_orbits(const Graph& g, unsigned workers) {
  const auto m = static_cast<EdgeId>(g.num_edges());
  std::vector<OrbitRow> rows(m, OrbitRow{});
  workers = std::max(1u, std::min<unsigned>(workers, std::max<EdgeId>(m, 1)));
  if (workers == 1) {
    count_range(g, 0, m, rows);
  } else {
    std::vector<std::thread> threads;
    const EdgeId chunk = (m + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      EdgeId lo = std::min<EdgeId>(m, w * chunk);
      EdgeId hi = std::min<EdgeId>(m, lo + chunk);
      threads.emplace_back([&g, &rows, lo, hi] { count_range(g, lo, hi, rows); });
    }
    for (auto& t : threads) t.join();
  }
  return EdgeOrbitCounts(std::move(rows), g.fingerprint());
}

namespace {

// Orbit of edge (a, b) inside an induced connected subgraph, given the
// subgraph's degree of each endpoint, its edge count and node count.
Orbit classify_edge(std::size_t nodes, std::size_t edges, std::size_t deg_a,
                    std::size_t deg_b, std::size_t max_deg) {
  const std::size_t lo = std::min(deg_a, deg_b);
  const std::size_t hi = std::max(deg_a, deg_b);
  if (nodes == 2) return Orbit::kEdge;
  if (nodes == 3) return edges == 3 ? Orbit::kTriangle : Orbit::kWedge;
  switch (edges) {
    case 3:
      if (max_deg == 3) return Orbit::kStar;
      return lo == 1 ? Orbit::kPathEnd : Orbit::kPathMiddle;
    case 4:
      if (max_deg == 2) return Orbit::kCycle;
      if (lo == 1) return Orbit::kTailedTail;
      return hi == 3 ? Orbit::kTailedAttached : Orbit::kTailedOpposite;
    case 5:
      return lo == 3 ? Orbit::kDiamondChord : Orbit::kDiamondCycle;
    case 6:
      return Orbit::kClique;
    default:
      throw std::logic_error("not a connected 4-node graph");
  }
}

}  // namespace

EdgeOrbitCounts brute_force_orbit_counts(const Graph& g, std::size_t max_nodes) {
  const std::size_t n = g.num_nodes();
  if (n > max_nodes) {
    throw std::invalid_argument("brute-force orbit oracle limited to " +
                                std::to_string(max_nodes) + " nodes");
  }
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;

  std::vector<OrbitRow> rows(g.num_edges(), OrbitRow{});
  std::vector<NodeId> nodes;

  auto visit = [&] {
    const std::size_t k = nodes.size();
    std::vector<std::size_t> deg(k, 0);
    std::size_t edges = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (adj[nodes[a]][nodes[b]]) {
          ++deg[a];
          ++deg[b];
          ++edges;
        }
    // Connectivity by flood fill from the first node.
    std::vector<char> seen(k, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < k; ++b)
        if (!seen[b] && adj[nodes[a]][nodes[b]]) {
          seen[b] = 1;
          ++reached;
          stack.push_back(b);
        }
    }
    if (reached != k) return;
    const std::size_t max_deg = *std::max_element(deg.begin(), deg.end());
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (adj[nodes[a]][nodes[b]]) {
          Orbit o = classify_edge(k, edges, deg[a], deg[b], max_deg);
          EdgeId e = *g.edge_index(nodes[a], nodes[b]);
          ++rows[e][orbit_index(o)];
        }
  };

  for (NodeId a = 0; a < n; ++a)
    for (NodeId b = a + 1; b < n; ++b) {
      nodes = {a, b};
      visit();
      for (NodeId c = b + 1; c < n; ++c) {
        nodes = {a, b, c};
        visit();
        for (NodeId d = c + 1; d < n; ++d) {
          nodes = {a, b, c, d};
          visit();
        }
      }
    }
  return EdgeOrbitCounts(std::move(rows), g.fingerprint());
}

Eigen::MatrixXd node_motif_degrees(const Graph& g, const EdgeOrbitCounts& counts) {
  if (!counts.matches(g)) throw std::invalid_argument("orbit counts do not match graph");
  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(g.num_nodes(), kNumOrbits);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.edge(e);
    for (int t = 0; t < kNumOrbits; ++t) {
      const auto c = static_cast<double>(counts.row(e)[t]);
      base(u, t) += c;
      base(v, t) += c;
    }
  }
  return base;
}

NodeMotifFeatures node_motif_features(const Graph& g, const EdgeOrbitCounts& counts) {
  const Eigen::MatrixXd base = node_motif_degrees(g, counts);
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  NodeMotifFeatures out;
  out.X = Eigen::MatrixXd::Zero(n, NodeMotifFeatures::kWidth);
  out.X.leftCols(kNumOrbits) = base;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto nbrs = g.neighbors(u);
    if (nbrs.empty()) continue;
    for (int t = 0; t < kNumOrbits; ++t) {
      double sum = 0.0, max = 0.0;
      for (NodeId w : nbrs) {
        sum += base(w, t);
        max = std::max(max, base(w, t));
      }
      out.X(u, kNumOrbits + t) = sum;
      out.X(u, 2 * kNumOrbits + t) = sum / static_cast<double>(nbrs.size());
      out.X(u, 3 * kNumOrbits + t) = max;
    }
  }
  normalize_columns(out.X);
  return out;
}

}  // namespace hone
