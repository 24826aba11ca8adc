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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "hone/graph.hpp"
#include "hone/motif_count.hpp"

namespace hone {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

enum class MotifMatrixKind {
  kWeightedGraph,        // W
  kTransition,           // P = D^-1 W
  kLaplacian,            // L = D - W
  kNormalizedLaplacian,  // I - D^-1/2 W D^-1/2
  kRandomWalkLaplacian,  // I - P
};

// Short CLI names: w, p, l, lnorm, lrw.
std::string_view kind_name(MotifMatrixKind kind);
MotifMatrixKind parse_kind(std::string_view name);
bool is_symmetric_kind(MotifMatrixKind kind);

// Sparse symmetric motif-weighted adjacency for one orbit. An edge is kept
// iff its orbit count is at least `delta`, and then carries that count.
struct MotifWeightedGraph {
  SparseMatrix W;
  Orbit orbit = Orbit::kEdge;
  std::uint64_t delta = 1;

  Eigen::Index size() const { return W.rows(); }
  // No edge survived the threshold.
  bool empty() const { return W.nonZeros() == 0; }
};

MotifWeightedGraph build_motif_weight_matrix(const Graph& g, const EdgeOrbitCounts& counts,
                                             Orbit orbit, std::uint64_t delta = 1);

// Row sums w_i.
Eigen::VectorXd motif_degrees(const SparseMatrix& W);
inline Eigen::VectorXd motif_degrees(const MotifWeightedGraph& mw) { return motif_degrees(mw.W); }

// Psi(W) for any nonnegative symmetric W. Nodes with zero motif degree get
// all-zero rows under P, and a zero diagonal under both normalized
// Laplacians.
SparseMatrix apply_psi(const SparseMatrix& W, MotifMatrixKind kind);
inline SparseMatrix apply_psi(const MotifWeightedGraph& mw, MotifMatrixKind kind) {
  return apply_psi(mw.W, kind);
}

enum class AccumulationMode {
  kAveragePowers,  // (1/K) sum_l Psi(W)^l
  kDecayedPsiSum,  // (1/K) sum_l alpha^l Psi(W^l)
};

struct AccumulationSpec {
  int K = 1;
  double alpha = 1.0;
  AccumulationMode mode = AccumulationMode::kAveragePowers;
};

class MaterializationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MaterializeLimits {
  Eigen::Index max_nodes = 20000;
  // Cap on nonzeros of any intermediate power.
  std::int64_t max_nonzeros = 50'000'000;
};

// Materialized accumulation variant. Throws MaterializationError when the
// result would exceed `limits`; callers should use KStepOperator instead.
SparseMatrix accumulate(const MotifWeightedGraph& mw, MotifMatrixKind kind,
                        const AccumulationSpec& spec, const MaterializeLimits& limits = {});

}  // namespace hone
