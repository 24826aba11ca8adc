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

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hone/graph.hpp"

namespace hone {

// Connected edge orbits on 2-4 vertices. Values are the 1-based orbit ids.
enum class Orbit : std::uint8_t {
  kEdge = 1,            // K2
  kWedge = 2,           // 3-path
  kTriangle = 3,        // K3
  kPathEnd = 4,         // 4-path, end edge
  kPathMiddle = 5,      // 4-path, middle edge
  kStar = 6,            // 3-star
  kCycle = 7,           // 4-cycle
  kTailedTail = 8,      // tailed triangle, pendant edge
  kTailedAttached = 9,  // tailed triangle, triangle edge at the attachment node
  kTailedOpposite = 10, // tailed triangle, triangle edge opposite the attachment
  kDiamondCycle = 11,   // diamond, rim edge
  kDiamondChord = 12,   // diamond, chord
  kClique = 13,         // K4
};

inline constexpr int kNumOrbits = 13;

constexpr std::size_t orbit_index(Orbit o) { return static_cast<std::size_t>(o) - 1; }
constexpr Orbit orbit_from_id(int id) { return static_cast<Orbit>(id); }
std::string_view orbit_name(Orbit o);
const std::array<Orbit, kNumOrbits>& all_orbits();

using OrbitRow = std::array<std::uint64_t, kNumOrbits>;

// Per-edge orbit frequencies, one row per EdgeId of the graph it was built
// from.
class EdgeOrbitCounts {
 public:
  EdgeOrbitCounts() = default;
  EdgeOrbitCounts(std::vector<OrbitRow> rows, std::uint64_t graph_fingerprint)
      : rows_(std::move(rows)), fingerprint_(graph_fingerprint) {}

  std::size_t num_edges() const { return rows_.size(); }
  const OrbitRow& row(EdgeId e) const { return rows_[e]; }
  std::uint64_t at(EdgeId e, Orbit o) const { return rows_[e][orbit_index(o)]; }
  std::span<const OrbitRow> rows() const { return rows_; }
  std::uint64_t graph_fingerprint() const { return fingerprint_; }
  bool matches(const Graph& g) const {
    return fingerprint_ == g.fingerprint() && rows_.size() == g.num_edges();
  }

  bool operator==(const EdgeOrbitCounts&) const = default;

 private:
  std::vector<OrbitRow> rows_;
  std::uint64_t fingerprint_ = 0;
};

// Exact induced edge-orbit counts by local enumeration around each edge.
// `workers` > 1 splits edges across threads; results are identical.
EdgeOrbitCounts count_edge_orbits(const Graph& g, unsigned workers = 1);

// Test oracle: enumerates every connected induced subgraph on 2-4 nodes and
// classifies each of its edges. Throws if N exceeds `max_nodes`.
EdgeOrbitCounts brute_force_orbit_counts(const Graph& g, std::size_t max_nodes = 64);

// N x 52 node features: per-orbit motif degree (sum over incident edges),
// then per-orbit sum, mean and max of the neighbors' motif degrees. Each
// column is scaled to unit Euclidean norm (zero columns stay zero).
struct NodeMotifFeatures {
  Eigen::MatrixXd X;
  static constexpr int kWidth = 4 * kNumOrbits;
};

// Unnormalized per-orbit motif degree of each node (N x 13).
Eigen::MatrixXd node_motif_degrees(const Graph& g, const EdgeOrbitCounts& counts);
NodeMotifFeatures node_motif_features(const Graph& g, const EdgeOrbitCounts& counts);

}  // namespace hone
