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

#include "hone/embed.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "hone/linop.hpp"

namespace hone {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr Eigen::Index kMaxDenseLocalNodes = 5000;

}  // namespace

std::uint64_t block_seed(std::uint64_t seed, Orbit orbit, int k) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(orbit) * 131 +
                                      static_cast<std::uint64_t>(k)));
}

std::vector<LocalBlock> local_embeddings(const Graph& g, const EdgeOrbitCounts& counts,
                                         const PipelineConfig& cfg) {
  if (cfg.K < 1) throw std::invalid_argument("K must be >= 1");
  if (cfg.local_rank < 1) throw std::invalid_argument("local rank must be >= 1");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  const std::size_t T = cfg.orbits.size();

  std::vector<MotifWeightedGraph> motif_graphs;
  motif_graphs.reserve(T);
  for (Orbit t : cfg.orbits)
    motif_graphs.push_back(build_motif_weight_matrix(g, counts, t, cfg.delta));

  std::vector<LocalBlock> blocks(T * static_cast<std::size_t>(cfg.K));
  auto compute = [&](std::size_t index) {
    const int k = static_cast<int>(index / T) + 1;
    const std::size_t t = index % T;
    LocalBlock& block = blocks[index];
    block.orbit = cfg.orbits[t];
    block.k = k;
    const MotifWeightedGraph& mw = motif_graphs[t];
    if (mw.empty()) {
      block.U = Eigen::MatrixXd::Zero(n, cfg.local_rank);
      block.empty = true;
      return;
    }
    FactorizeConfig fc;
    fc.rank = cfg.local_rank;
    fc.oversampling = cfg.oversampling;
    fc.power_iterations = cfg.power_iterations;
    fc.method = cfg.local_method;
    fc.ccd = cfg.local_ccd;
    fc.seed = block_seed(cfg.seed, block.orbit, k);
    const KStepOperator op(mw, cfg.kind, k);
    LowRankFactors f;
    if (cfg.local_method == FactorizeMethod::kRandomizedSvd) {
      f = randomized_low_rank(op, fc);
    } else {
      if (n > kMaxDenseLocalNodes) {
        throw MaterializationError("CCD local embeddings need a materialized k-step matrix; "
                                   "graph too large, use the randomized method");
      }
      f = ccd_factorize(op.materialize(), fc);
    }
    block.U = std::move(f.U);
    block.achieved_rank = f.achieved_rank;
    normalize_columns(block.U);
  };

  const std::size_t total = blocks.size();
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, total));
  if (workers == 1) {
    for (std::size_t i = 0; i < total; ++i) compute(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < total; i = next++) compute(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return blocks;
}

ConcatenatedY concatenate(const std::vector<LocalBlock>& blocks,
                          const std::optional<Eigen::MatrixXd>& attributes) {
  Eigen::Index rows = -1;
  Eigen::Index cols = 0;
  auto check_rows = [&rows](Eigen::Index r) {
    if (rows >= 0 && r != rows) throw std::invalid_argument("blocks disagree on node count");
    rows = r;
  };
  for (const auto& b : blocks) {
    check_rows(b.U.rows());
    cols += b.U.cols();
  }
  if (attributes) {
    check_rows(attributes->rows());
    cols += attributes->cols();
  }
  ConcatenatedY out;
  out.Y.resize(std::max<Eigen::Index>(rows, 0), cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.Y.middleCols(at, b.U.cols()) = b.U;
    out.provenance.push_back({BlockTag::Source::kMotif, b.orbit, b.k, at, b.U.cols()});
    at += b.U.cols();
  }
  if (attributes) {
    out.Y.middleCols(at, attributes->cols()) = *attributes;
    out.provenance.push_back(
        {BlockTag::Source::kAttributes, Orbit::kEdge, 0, at, attributes->cols()});
  }
  return out;
}

GlobalEmbedding global_embedding(const Eigen::MatrixXd& Y, int D, FactorizeMethod method,
                                 std::uint64_t seed, const CcdOptions& ccd) {
  if (D < 1) throw std::invalid_argument("embedding dimension must be >= 1");
  if (D > Y.cols()) {
    throw std::invalid_argument("embedding dimension " + std::to_string(D) +
                                " exceeds the " + std::to_string(Y.cols()) +
                                " columns of Y");
  }
  FactorizeConfig fc;
  fc.rank = D;
  fc.method = method;
  fc.ccd = ccd;
  fc.seed = seed;
  GlobalEmbedding out;
  LowRankFactors f;
  if (method == FactorizeMethod::kCcd) {
    f = ccd_factorize(Y, fc);
  } else {
    f = randomized_low_rank(DenseOperator(Y), fc);
  }
  out.Z = std::move(f.U);
  out.H = std::move(f.V);
  out.objective = std::move(f.objective);
  return out;
}

Eigen::MatrixXd diffuse_through(const MotifWeightedGraph& mw, const Eigen::MatrixXd& X,
                                const DiffusionConfig& dcfg) {
  if (X.rows() != mw.size()) throw std::invalid_argument("attribute rows differ from N");
  if (dcfg.steps < 1) throw std::invalid_argument("diffusion needs at least one step");
  Eigen::MatrixXd current = X;
  switch (dcfg.variant) {
    case DiffusionVariant::kTransitionWalk: {
      const KStepOperator P(mw, MotifMatrixKind::kTransition, 1);
      for (int step = 0; step < dcfg.steps; ++step) current = P.apply(current);
      break;
    }
    case DiffusionVariant::kLinearPsi: {
      for (int step = 1; step <= dcfg.steps; ++step) {
        const KStepOperator S(mw, dcfg.kind, step);
        current = S.apply(current);
      }
      break;
    }
    case DiffusionVariant::kNormalizedLaplacianTheta: {
      if (!(dcfg.theta > 0.0 && dcfg.theta <= 1.0))
        throw std::invalid_argument("theta must lie in (0, 1]");
      const KStepOperator L(mw, MotifMatrixKind::kNormalizedLaplacian, 1);
      for (int step = 0; step < dcfg.steps; ++step)
        current = (1.0 - dcfg.theta) * L.apply(current) + dcfg.theta * X;
      break;
    }
  }
  return current;
}

Eigen::MatrixXd diffuse_attributes(const Graph& g, const EdgeOrbitCounts& counts,
                                   const Eigen::MatrixXd& X, const DiffusionConfig& dcfg,
                                   const std::vector<Orbit>& orbits, std::uint64_t delta) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  if (X.rows() != n) throw std::invalid_argument("attribute rows differ from N");
  Eigen::MatrixXd out(n, X.cols() * static_cast<Eigen::Index>(orbits.size()));
  for (std::size_t t = 0; t < orbits.size(); ++t) {
    const MotifWeightedGraph mw = build_motif_weight_matrix(g, counts, orbits[t], delta);
    out.middleCols(static_cast<Eigen::Index>(t) * X.cols(), X.cols()) =
        diffuse_through(mw, X, dcfg);
  }
  normalize_columns(out);
  return out;
}

PipelineResult run_pipeline(const Graph& g, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  const EdgeOrbitCounts counts = count_edge_orbits(g, cfg.workers);
  const double count_seconds = seconds_since(start);
  PipelineResult result = run_pipeline(g, counts, cfg);
  result.timings.count_seconds = count_seconds;
  result.timings.total_seconds = seconds_since(start);
  return result;
}

PipelineResult run_pipeline(const Graph& g, const EdgeOrbitCounts& counts,
                            const PipelineConfig& cfg) {
  PipelineResult result;
  const auto start = Clock::now();

  auto stage = Clock::now();
  std::vector<LocalBlock> blocks = local_embeddings(g, counts, cfg);
  result.timings.local_seconds = seconds_since(stage);
  for (const auto& b : blocks) {
    if (b.empty) {
      result.warnings.push_back("orbit " + std::to_string(static_cast<int>(b.orbit)) +
                                " k=" + std::to_string(b.k) + ": empty motif graph, zero block");
    } else if (b.achieved_rank < cfg.local_rank) {
      result.warnings.push_back("orbit " + std::to_string(static_cast<int>(b.orbit)) +
                                " k=" + std::to_string(b.k) + ": rank " +
                                std::to_string(b.achieved_rank) + " < " +
                                std::to_string(cfg.local_rank) + ", zero-padded");
    }
  }

  std::optional<Eigen::MatrixXd> attributes;
  if (cfg.diffusion) {
    stage = Clock::now();
    DiffusionConfig dcfg = *cfg.diffusion;
    if (dcfg.steps <= 0) dcfg.steps = cfg.K;
    const NodeMotifFeatures X = node_motif_features(g, counts);
    attributes = diffuse_attributes(g, counts, X.X, dcfg, cfg.orbits, cfg.delta);
    result.timings.diffusion_seconds = seconds_since(stage);
  }

  result.Y = concatenate(blocks, attributes);
  blocks.clear();

  int D = cfg.global_rank;
  if (D > result.Y.Y.cols()) {
    result.warnings.push_back("D=" + std::to_string(D) + " clamped to " +
                              std::to_string(result.Y.Y.cols()) + " columns of Y");
    D = static_cast<int>(result.Y.Y.cols());
  }
  result.global_rank = D;
  stage = Clock::now();
  result.global = global_embedding(result.Y.Y, D, cfg.global_method,
                                   splitmix64(cfg.seed ^ 0x676c6f62616cULL), cfg.global_ccd);
  result.timings.global_seconds = seconds_since(stage);
  result.timings.total_seconds = seconds_since(start);
  return result;
}

}  // namespace hone
