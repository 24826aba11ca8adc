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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hone/factorize.hpp"
#include "hone/graph.hpp"
#include "hone/motif_count.hpp"
#include "hone/motif_matrix.hpp"

namespace hone {

enum class DiffusionVariant {
  kLinearPsi,       // X_k = Psi(W^k) X_{k-1}
  kTransitionWalk,  // X_k = P X_{k-1}
  kNormalizedLaplacianTheta,  // X_k = (1 - theta) Lhat X_{k-1} + theta X
};

struct DiffusionConfig {
  DiffusionVariant variant = DiffusionVariant::kLinearPsi;
  int steps = 0;  // 0: use the pipeline's K
  double theta = 0.5;  // used by kNormalizedLaplacianTheta only
  // Matrix function for kLinearPsi.
  MotifMatrixKind kind = MotifMatrixKind::kWeightedGraph;
};

struct PipelineConfig {
  std::vector<Orbit> orbits = std::vector<Orbit>(all_orbits().begin(), all_orbits().end());
  int K = 2;
  int local_rank = 16;   // D_l
  int global_rank = 128; // D
  MotifMatrixKind kind = MotifMatrixKind::kWeightedGraph;
  std::uint64_t delta = 1;
  std::optional<DiffusionConfig> diffusion;
  FactorizeMethod local_method = FactorizeMethod::kRandomizedSvd;
  FactorizeMethod global_method = FactorizeMethod::kCcd;
  int oversampling = 10;
  int power_iterations = 2;
  CcdOptions local_ccd;
  CcdOptions global_ccd;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

// Column-normalized local embedding of one (orbit, k) motif matrix.
struct LocalBlock {
  Orbit orbit = Orbit::kEdge;
  int k = 1;
  Eigen::MatrixXd U;
  int achieved_rank = 0;
  // The motif graph had no edges; U is all zero.
  bool empty = false;
};

struct BlockTag {
  enum class Source { kMotif, kAttributes };
  Source source = Source::kMotif;
  Orbit orbit = Orbit::kEdge;  // kMotif only
  int k = 0;                   // kMotif only
  Eigen::Index first_col = 0;
  Eigen::Index width = 0;
};

struct ConcatenatedY {
  Eigen::MatrixXd Y;
  std::vector<BlockTag> provenance;
};

struct GlobalEmbedding {
  Eigen::MatrixXd Z;  // N x D, row i is node i
  Eigen::MatrixXd H;  // D x cols(Y)
  std::vector<double> objective;  // CCD sweeps; empty for the SVD route
};

// Per-block seed derived from the run seed.
std::uint64_t block_seed(std::uint64_t seed, Orbit orbit, int k);

// Blocks in k-major order: (t1,k=1) ... (tT,k=1), (t1,k=2), ...
std::vector<LocalBlock> local_embeddings(const Graph& g, const EdgeOrbitCounts& counts,
                                         const PipelineConfig& cfg);

// [U blocks | attributes]; attributes (if any) must already be normalized.
ConcatenatedY concatenate(const std::vector<LocalBlock>& blocks,
                          const std::optional<Eigen::MatrixXd>& attributes = std::nullopt);

// Y ~= Z H at rank D. Throws if D exceeds the column count of Y.
GlobalEmbedding global_embedding(const Eigen::MatrixXd& Y, int D, FactorizeMethod method,
                                 std::uint64_t seed, const CcdOptions& ccd = {});

// One orbit's diffusion of X through its motif graph, unnormalized.
Eigen::MatrixXd diffuse_through(const MotifWeightedGraph& mw, const Eigen::MatrixXd& X,
                                const DiffusionConfig& dcfg);

// [Xbar_t1 Xbar_t2 ...] over `orbits`, column-normalized.
Eigen::MatrixXd diffuse_attributes(const Graph& g, const EdgeOrbitCounts& counts,
                                   const Eigen::MatrixXd& X, const DiffusionConfig& dcfg,
                                   const std::vector<Orbit>& orbits, std::uint64_t delta = 1);

struct StageTimings {
  double count_seconds = 0.0;
  double local_seconds = 0.0;
  double diffusion_seconds = 0.0;
  double global_seconds = 0.0;
  double total_seconds = 0.0;
};

struct PipelineResult {
  ConcatenatedY Y;
  GlobalEmbedding global;
  int global_rank = 0;  // D actually used
  std::vector<std::string> warnings;
  StageTimings timings;
};

// counts -> local embeddings -> optional diffused attributes -> Y -> (Z, H).
PipelineResult run_pipeline(const Graph& g, const PipelineConfig& cfg);
PipelineResult run_pipeline(const Graph& g, const EdgeOrbitCounts& counts,
                            const PipelineConfig& cfg);

}  // namespace hone
