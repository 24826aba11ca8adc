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

#include "hone/motif_matrix.hpp"

#include <cmath>
#include <vector>

namespace hone {

std::string_view kind_name(MotifMatrixKind kind) {
  switch (kind) {
    case MotifMatrixKind::kWeightedGraph: return "w";
    case MotifMatrixKind::kTransition: return "p";
    case MotifMatrixKind::kLaplacian: return "l";
    case MotifMatrixKind::kNormalizedLaplacian: return "lnorm";
    case MotifMatrixKind::kRandomWalkLaplacian: return "lrw";
  }
  return "?";
}

MotifMatrixKind parse_kind(std::string_view name) {
  if (name == "w") return MotifMatrixKind::kWeightedGraph;
  if (name == "p") return MotifMatrixKind::kTransition;
  if (name == "l") return MotifMatrixKind::kLaplacian;
  if (name == "lnorm") return MotifMatrixKind::kNormalizedLaplacian;
  if (name == "lrw") return MotifMatrixKind::kRandomWalkLaplacian;
  throw std::invalid_argument("unknown motif matrix kind '" + std::string(name) + "'");
}

bool is_symmetric_kind(MotifMatrixKind kind) {
  return kind == MotifMatrixKind::kWeightedGraph || kind == MotifMatrixKind::kLaplacian ||
         kind == MotifMatrixKind::kNormalizedLaplacian;
}

MotifWeightedGraph build_motif_weight_matrix(const Graph& g, const EdgeOrbitCounts& counts,
                                             Orbit orbit, std::uint64_t delta) {
  if (!counts.matches(g)) throw std::invalid_argument("orbit counts do not match graph");
  if (delta < 1) throw std::invalid_argument("delta must be >= 1");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const std::uint64_t c = counts.at(e, orbit);
    if (c < delta) continue;
    auto [u, v] = g.edge(e);
    triplets.emplace_back(u, v, static_cast<double>(c));
    triplets.emplace_back(v, u, static_cast<double>(c));
  }
  MotifWeightedGraph out;
  out.W.resize(n, n);
  out.W.setFromTriplets(triplets.begin(), triplets.end());
  out.W.makeCompressed();
  out.orbit = orbit;
  out.delta = delta;
  return out;
}

Eigen::VectorXd motif_degrees(const SparseMatrix& W) {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(W.rows());
  for (Eigen::Index i = 0; i < W.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(W, i); it; ++it) w[i] += it.value();
  return w;
}

SparseMatrix apply_psi(const SparseMatrix& W, MotifMatrixKind kind) {
  if (kind == MotifMatrixKind::kWeightedGraph) return W;
  const Eigen::VectorXd w = motif_degrees(W);
  const Eigen::Index n = W.rows();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(W.nonZeros() + n));

  for (Eigen::Index i = 0; i < n; ++i) {
    const bool active = w[i] != 0.0;
    switch (kind) {
      case MotifMatrixKind::kTransition:
        if (!active) break;
        for (SparseMatrix::InnerIterator it(W, i); it; ++it)
          triplets.emplace_back(i, it.col(), it.value() / w[i]);
        break;
      case MotifMatrixKind::kLaplacian:
        if (!active) break;
        triplets.emplace_back(i, i, w[i]);
        for (SparseMatrix::InnerIterator it(W, i); it; ++it)
          triplets.emplace_back(i, it.col(), -it.value());
        break;
      case MotifMatrixKind::kNormalizedLaplacian:
        if (!active) break;
        triplets.emplace_back(i, i, 1.0);
        for (SparseMatrix::InnerIterator it(W, i); it; ++it)
          triplets.emplace_back(i, it.col(), -it.value() / std::sqrt(w[i] * w[it.col()]));
        break;
      case MotifMatrixKind::kRandomWalkLaplacian:
        if (!active) break;
        triplets.emplace_back(i, i, 1.0);
        for (SparseMatrix::InnerIterator it(W, i); it; ++it)
          triplets.emplace_back(i, it.col(), -it.value() / w[i]);
        break;
      case MotifMatrixKind::kWeightedGraph:
        break;
    }
  }
  SparseMatrix S(n, n);
  S.setFromTriplets(triplets.begin(), triplets.end());
  S.makeCompressed();
  return S;
}

namespace {

void check_limits(const SparseMatrix& M, const MaterializeLimits& limits) {
  if (M.nonZeros() > limits.max_nonzeros) {
    throw MaterializationError("accumulated matrix exceeds " +
                               std::to_string(limits.max_nonzeros) +
                               " nonzeros; use the implicit k-step operator");
  }
}

}  // namespace

SparseMatrix accumulate(const MotifWeightedGraph& mw, MotifMatrixKind kind,
                        const AccumulationSpec& spec, const MaterializeLimits& limits) {
  if (spec.K < 1) throw std::invalid_argument("accumulation needs K >= 1");
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0))
    throw std::invalid_argument("decay factor must lie in (0, 1]");
  if (mw.size() > limits.max_nodes) {
    throw MaterializationError("graph has " + std::to_string(mw.size()) +
                               " nodes, above the materialization cap of " +
                               std::to_string(limits.max_nodes) +
                               "; use the implicit k-step operator");
  }

  const Eigen::Index n = mw.size();
  SparseMatrix sum(n, n);
  if (spec.mode == AccumulationMode::kAveragePowers) {
    const SparseMatrix base = apply_psi(mw.W, kind);
    SparseMatrix power = base;
    for (int l = 1; l <= spec.K; ++l) {
      if (l > 1) {
        power = (power * base).pruned();
        check_limits(power, limits);
      }
      sum += power;
    }
  } else {
    SparseMatrix power = mw.W;
    double scale = 1.0;
    for (int l = 1; l <= spec.K; ++l) {
      if (l > 1) {
        power = (power * mw.W).pruned();
        check_limits(power, limits);
      }
      scale *= spec.alpha;
      sum += scale * apply_psi(power, kind);
    }
  }
  sum *= 1.0 / spec.K;
  sum.makeCompressed();
  return sum;
}

}  // namespace hone
