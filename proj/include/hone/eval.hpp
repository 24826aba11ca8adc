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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hone/embed.hpp"
#include "hone/graph.hpp"

namespace hone {

using NodePair = std::pair<NodeId, NodeId>;

// Half of the edges are held out as positives; the rest form the training
// graph on the same node set. Negatives are distinct non-adjacent pairs.
struct LinkPredSplit {
  Graph train_graph;
  std::vector<NodePair> positives;
  std::vector<NodePair> negatives;
  std::uint64_t seed = 0;
};

LinkPredSplit make_split(const Graph& g, std::uint64_t seed);

// Row p is (z_u + z_v) / 2 for pairs[p] = (u, v).
Eigen::MatrixXd edge_features_mean(const Eigen::MatrixXd& Z, std::span<const NodePair> pairs);

// Mann-Whitney AUC; ties count one half. Labels are 0/1.
double auc(std::span<const double> scores, std::span<const int> labels);

struct LogRegOptions {
  int max_iterations = 500;
  double grad_tol = 1e-6;
};

struct LogRegModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  double reg = 0.0;
  int iterations = 0;
  bool converged = false;
  double cv_auc = 0.0;  // selection score, when chosen by cross-validation

  double decision(const Eigen::Ref<const Eigen::VectorXd>& x) const {
    return weights.dot(x) + bias;
  }
  // sigmoid(w.x + b) per row.
  Eigen::VectorXd predict(const Eigen::MatrixXd& X) const;
};

// Full-batch gradient descent with backtracking on
// mean log-loss + reg/2 ||w||^2 (bias unpenalized).
LogRegModel fit_logreg(const Eigen::MatrixXd& X, std::span<const int> labels, double reg,
                       const LogRegOptions& options = {});

const std::vector<double>& default_lambda_grid();

// Stratified fold assignment, 0..folds-1 per example.
std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

// Mean held-out AUC over stratified folds.
double cross_validated_auc(const Eigen::MatrixXd& X, std::span<const int> labels, double reg,
                           int folds, std::uint64_t seed, const LogRegOptions& options = {});

// Stratified subsample of ceil(fraction * n) indices (at least 2 per class).
std::vector<std::size_t> selection_subsample(std::span<const int> labels, double fraction,
                                             std::uint64_t seed);

// Picks lambda by `folds`-fold CV AUC on a 10% stratified subsample, then
// refits on all given rows with that lambda.
LogRegModel train_logreg(const Eigen::MatrixXd& X, std::span<const int> labels,
                         const std::vector<double>& lambda_grid, int folds, std::uint64_t seed,
                         const LogRegOptions& options = {});

struct ExperimentConfig {
  PipelineConfig pipeline;
  std::vector<int> k_grid = {1, 2, 3, 4};
  std::vector<double> lambda_grid = default_lambda_grid();
  int folds = 10;
  double selection_fraction = 0.1;
  int num_seeds = 10;
  std::uint64_t base_seed = 1;
  LogRegOptions logreg;
};

struct SeedResult {
  std::uint64_t seed = 0;
  int K = 0;
  double lambda = 0.0;
  double selection_auc = 0.0;
  double auc = 0.0;
};

struct EvalReport {
  std::vector<SeedResult> runs;
  double mean_auc = 0.0;
  double std_auc = 0.0;
  int selected_K = 0;  // most frequent choice, smallest on ties
  std::string config;
};

struct KSelection {
  int K = 0;
  double lambda = 0.0;
  double auc = 0.0;
};

// Grid search over K (and lambda) by CV AUC on the selection subsample of
// the split's labeled pairs. Ties go to the smaller K.
KSelection select_k(const LinkPredSplit& split, const ExperimentConfig& cfg,
                    std::uint64_t seed);
int select_k(const Graph& g, const ExperimentConfig& cfg, std::uint64_t seed);

// Per seed: split, select K, embed the training graph, featurize all labeled
// pairs and report their mean 10-fold CV AUC.
SeedResult run_seed(const Graph& g, const ExperimentConfig& cfg, std::uint64_t seed);
EvalReport run_experiment(const Graph& g, const ExperimentConfig& cfg);

std::string describe(const ExperimentConfig& cfg);

}  // namespace hone
