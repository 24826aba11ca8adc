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

#include "hone/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace hone {

LinkPredSplit make_split(const Graph& g, std::uint64_t seed) {
  const std::size_t m = g.num_edges();
  const std::size_t n = g.num_nodes();
  if (m < 4) throw std::invalid_argument("link prediction split needs at least 4 edges");
  std::mt19937_64 rng(seed);

  std::vector<EdgeId> order(m);
  std::iota(order.begin(), order.end(), EdgeId{0});
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t held_out = m / 2;

  LinkPredSplit split;
  split.seed = seed;
  split.positives.reserve(held_out);
  std::vector<NodePair> kept;
  kept.reserve(m - held_out);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < held_out) split.positives.push_back(g.edge(order[i]));
    else kept.push_back(g.edge(order[i]));
  }
  std::sort(split.positives.begin(), split.positives.end());
  split.train_graph =
      Graph::from_edges(n, kept, std::vector<std::int64_t>(g.labels().begin(), g.labels().end()));

  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  std::unordered_set<std::uint64_t> chosen;
  const std::size_t max_attempts = 100 * held_out + 10000;
  std::size_t attempts = 0;
  while (split.negatives.size() < held_out) {
    if (++attempts > max_attempts) {
      throw std::runtime_error("graph too dense: could not sample " + std::to_string(held_out) +
                               " non-adjacent pairs");
    }
    NodeId u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (g.has_edge(u, v)) continue;
    const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
    if (!chosen.insert(key).second) continue;
    split.negatives.emplace_back(u, v);
  }
  return split;
}

Eigen::MatrixXd edge_features_mean(const Eigen::MatrixXd& Z, std::span<const NodePair> pairs) {
  Eigen::MatrixXd F(static_cast<Eigen::Index>(pairs.size()), Z.cols());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [u, v] = pairs[p];
    if (u >= Z.rows() || v >= Z.rows()) throw std::out_of_range("pair node id out of range");
    F.row(static_cast<Eigen::Index>(p)) = 0.5 * (Z.row(u) + Z.row(v));
  }
  return F;
}

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("scores/labels size mismatch");
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[idx[j]] == scores[idx[i]]) ++j;
    // Ranks i+1..j share their average.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t r = i; r < j; ++r) {
      if (labels[idx[r]] == 1) {
        pos_rank_sum += rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("AUC needs both classes");
  const double np = static_cast<double>(n_pos);
  return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

Eigen::VectorXd LogRegModel::predict(const Eigen::MatrixXd& X) const {
  Eigen::VectorXd s = (X * weights).array() + bias;
  return s.unaryExpr([](double z) { return 1.0 / (1.0 + std::exp(-z)); });
}

namespace {

// mean(log(1 + e^s) - y s), computed without overflow.
double mean_log_loss(const Eigen::VectorXd& s, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double z = s[i];
    total += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))) - y[i] * z;
  }
  return total / static_cast<double>(s.size());
}

Eigen::VectorXd to_vector(std::span<const int> labels) {
  Eigen::VectorXd y(static_cast<Eigen::Index>(labels.size()));
  for (std::size_t i = 0; i < labels.size(); ++i) y[static_cast<Eigen::Index>(i)] = labels[i];
  return y;
}

void require_two_classes(std::span<const int> labels, std::size_t min_per_class) {
  std::size_t pos = 0;
  for (int l : labels) {
    if (l != 0 && l != 1) throw std::invalid_argument("labels must be 0 or 1");
    pos += (l == 1);
  }
  if (pos < min_per_class || labels.size() - pos < min_per_class) {
    throw std::invalid_argument("need at least " + std::to_string(min_per_class) +
                                " examples of each class");
  }
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& X, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = X.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

std::vector<int> take(std::span<const int> v, const std::vector<std::size_t>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(v[r]);
  return out;
}

std::size_t minority_count(std::span<const int> labels) {
  const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  return std::min(pos, labels.size() - pos);
}

int usable_folds(std::span<const int> labels, int folds) {
  const int f = static_cast<int>(std::min<std::size_t>(folds, minority_count(labels)));
  if (f < 2) throw std::invalid_argument("too few examples per class for cross-validation");
  return f;
}

}  // namespace

LogRegModel fit_logreg(const Eigen::MatrixXd& X, std::span<const int> labels, double reg,
                       const LogRegOptions& options) {
  if (X.rows() != static_cast<Eigen::Index>(labels.size()))
    throw std::invalid_argument("feature/label row mismatch");
  require_two_classes(labels, 1);
  const Eigen::VectorXd y = to_vector(labels);
  const double n = static_cast<double>(X.rows());

  LogRegModel model;
  model.reg = reg;
  model.weights = Eigen::VectorXd::Zero(X.cols());
  auto objective = [&](const Eigen::VectorXd& w, double b) {
    const Eigen::VectorXd s = (X * w).array() + b;
    return mean_log_loss(s, y) + 0.5 * reg * w.squaredNorm();
  };

  double value = objective(model.weights, model.bias);
  double step = 1.0;
  for (model.iterations = 0; model.iterations < options.max_iterations; ++model.iterations) {
    const Eigen::VectorXd s = (X * model.weights).array() + model.bias;
    const Eigen::VectorXd resid =
        s.unaryExpr([](double z) { return 1.0 / (1.0 + std::exp(-z)); }) - y;
    const Eigen::VectorXd gw = X.transpose() * resid / n + reg * model.weights;
    const double gb = resid.sum() / n;
    const double gnorm2 = gw.squaredNorm() + gb * gb;
    if (std::sqrt(gnorm2) <= options.grad_tol) {
      model.converged = true;
      break;
    }
    // Armijo backtracking, starting from twice the last accepted step.
    double t = std::min(step * 2.0, 1e6);
    Eigen::VectorXd w_next;
    double b_next = 0.0, v_next = 0.0;
    for (;;) {
      w_next = model.weights - t * gw;
      b_next = model.bias - t * gb;
      v_next = objective(w_next, b_next);
      if (v_next <= value - 0.5 * t * gnorm2 || t < 1e-16) break;
      t *= 0.5;
    }
    if (!(v_next < value)) {
      model.converged = true;  // no further descent possible at machine precision
      break;
    }
    model.weights = std::move(w_next);
    model.bias = b_next;
    value = v_next;
    step = t;
  }
  return model;
}

const std::vector<double>& default_lambda_grid() {
  static const std::vector<double> grid = {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0};
  return grid;
}

std::vector<int> stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> assignment(labels.size(), 0);
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    for (std::size_t r = 0; r < members.size(); ++r)
      assignment[members[r]] = static_cast<int>(r % static_cast<std::size_t>(folds));
  }
  return assignment;
}

double cross_validated_auc(const Eigen::MatrixXd& X, std::span<const int> labels, double reg,
                           int folds, std::uint64_t seed, const LogRegOptions& options) {
  require_two_classes(labels, 2);
  folds = usable_folds(labels, folds);
  const std::vector<int> fold = stratified_folds(labels, folds, seed);
  double total = 0.0;
  for (int f = 0; f < folds; ++f) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < labels.size(); ++i) (fold[i] == f ? test : train).push_back(i);
    const std::vector<int> train_labels = take(labels, train);
    const std::vector<int> test_labels = take(labels, test);
    const LogRegModel model = fit_logreg(take_rows(X, train), train_labels, reg, options);
    const Eigen::MatrixXd Xt = take_rows(X, test);
    std::vector<double> scores(test.size());
    for (std::size_t i = 0; i < test.size(); ++i)
      scores[i] = model.decision(Xt.row(static_cast<Eigen::Index>(i)).transpose());
    total += auc(scores, test_labels);
  }
  return total / folds;
}

std::vector<std::size_t> selection_subsample(std::span<const int> labels, double fraction,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5e1ec7ULL);
  std::vector<std::size_t> out;
  for (int cls : {0, 1}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    auto take_n = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(members.size())));
    take_n = std::min(members.size(), std::max<std::size_t>(take_n, 2));
    out.insert(out.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take_n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

LogRegModel train_logreg(const Eigen::MatrixXd& X, std::span<const int> labels,
                         const std::vector<double>& lambda_grid, int folds, std::uint64_t seed,
                         const LogRegOptions& options) {
  require_two_classes(labels, 2);
  if (lambda_grid.empty()) throw std::invalid_argument("empty lambda grid");
  const std::vector<std::size_t> subset = selection_subsample(labels, 0.1, seed);
  const Eigen::MatrixXd Xs = take_rows(X, subset);
  const std::vector<int> ys = take(labels, subset);
  double best_lambda = lambda_grid.front();
  double best_auc = -1.0;
  for (double reg : lambda_grid) {
    const double a = cross_validated_auc(Xs, ys, reg, folds, seed, options);
    if (a > best_auc) {
      best_auc = a;
      best_lambda = reg;
    }
  }
  LogRegModel model = fit_logreg(X, labels, best_lambda, options);
  model.cv_auc = best_auc;
  return model;
}

namespace {

struct LabeledPairs {
  std::vector<NodePair> pairs;
  std::vector<int> labels;
};

LabeledPairs labeled_pairs(const LinkPredSplit& split) {
  LabeledPairs out;
  out.pairs = split.positives;
  out.pairs.insert(out.pairs.end(), split.negatives.begin(), split.negatives.end());
  out.labels.assign(split.positives.size(), 1);
  out.labels.resize(out.pairs.size(), 0);
  return out;
}

Eigen::MatrixXd embed(const Graph& train, const ExperimentConfig& cfg, int K,
                      std::uint64_t seed) {
  PipelineConfig pcfg = cfg.pipeline;
  pcfg.K = K;
  pcfg.seed = seed;
  return run_pipeline(train, pcfg).global.Z;
}

KSelection select_k_impl(const LinkPredSplit& split, const ExperimentConfig& cfg,
                         std::uint64_t seed, std::map<int, Eigen::MatrixXd>& cache) {
  if (cfg.k_grid.empty()) throw std::invalid_argument("empty K grid");
  const LabeledPairs data = labeled_pairs(split);
  const std::vector<std::size_t> subset =
      selection_subsample(data.labels, cfg.selection_fraction, seed);
  std::vector<NodePair> sel_pairs;
  for (auto i : subset) sel_pairs.push_back(data.pairs[i]);
  const std::vector<int> sel_labels = take(data.labels, subset);

  std::vector<int> grid = cfg.k_grid;
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  KSelection best;
  best.auc = -1.0;
  for (int K : grid) {
    auto it = cache.find(K);
    if (it == cache.end()) it = cache.emplace(K, embed(split.train_graph, cfg, K, seed)).first;
    const Eigen::MatrixXd F = edge_features_mean(it->second, sel_pairs);
    for (double reg : cfg.lambda_grid) {
      const double a = cross_validated_auc(F, sel_labels, reg, cfg.folds, seed, cfg.logreg);
      if (a > best.auc) best = {K, reg, a};
    }
  }
  return best;
}

}  // namespace

KSelection select_k(const LinkPredSplit& split, const ExperimentConfig& cfg,
                    std::uint64_t seed) {
  std::map<int, Eigen::MatrixXd> cache;
  return select_k_impl(split, cfg, seed, cache);
}

int select_k(const Graph& g, const ExperimentConfig& cfg, std::uint64_t seed) {
  return select_k(make_split(g, seed), cfg, seed).K;
}

SeedResult run_seed(const Graph& g, const ExperimentConfig& cfg, std::uint64_t seed) {
  const LinkPredSplit split = make_split(g, seed);
  std::map<int, Eigen::MatrixXd> cache;
  const KSelection sel = select_k_impl(split, cfg, seed, cache);
  const LabeledPairs data = labeled_pairs(split);
  const Eigen::MatrixXd F = edge_features_mean(cache.at(sel.K), data.pairs);
  SeedResult r;
  r.seed = seed;
  r.K = sel.K;
  r.lambda = sel.lambda;
  r.selection_auc = sel.auc;
  r.auc = cross_validated_auc(F, data.labels, sel.lambda, cfg.folds, seed, cfg.logreg);
  return r;
}

EvalReport run_experiment(const Graph& g, const ExperimentConfig& cfg) {
  if (cfg.num_seeds < 1) throw std::invalid_argument("need at least one seed");
  EvalReport report;
  report.config = describe(cfg);
  for (int s = 0; s < cfg.num_seeds; ++s) {
    const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(s);
    try {
      report.runs.push_back(run_seed(g, cfg, seed));
    } catch (const std::exception& e) {
      throw std::runtime_error("seed " + std::to_string(seed) + ": " + e.what());
    }
  }
  double sum = 0.0;
  for (const auto& r : report.runs) sum += r.auc;
  report.mean_auc = sum / static_cast<double>(report.runs.size());
  double ss = 0.0;
  for (const auto& r : report.runs) ss += (r.auc - report.mean_auc) * (r.auc - report.mean_auc);
  report.std_auc =
      report.runs.size() > 1 ? std::sqrt(ss / static_cast<double>(report.runs.size() - 1)) : 0.0;

  std::map<int, int> votes;
  for (const auto& r : report.runs) ++votes[r.K];
  int best_votes = 0;
  for (auto [K, count] : votes) {
    if (count > best_votes) {
      best_votes = count;
      report.selected_K = K;
    }
  }
  return report;
}

std::string describe(const ExperimentConfig& cfg) {
  std::ostringstream os;
  const PipelineConfig& p = cfg.pipeline;
  os << "kind=" << kind_name(p.kind) << " delta=" << p.delta << " dl=" << p.local_rank
     << " d=" << p.global_rank << " orbits=";
  for (std::size_t i = 0; i < p.orbits.size(); ++i)
    os << (i ? "," : "") << static_cast<int>(p.orbits[i]);
  os << " k_grid=";
  for (std::size_t i = 0; i < cfg.k_grid.size(); ++i) os << (i ? "," : "") << cfg.k_grid[i];
  os << " lambda_grid=";
  for (std::size_t i = 0; i < cfg.lambda_grid.size(); ++i)
    os << (i ? "," : "") << cfg.lambda_grid[i];
  os << " folds=" << cfg.folds << " selection_fraction=" << cfg.selection_fraction
     << " seeds=" << cfg.num_seeds << " base_seed=" << cfg.base_seed << " diffusion=";
  if (!p.diffusion) {
    os << "none";
  } else {
    switch (p.diffusion->variant) {
      case DiffusionVariant::kLinearPsi: os << "linear"; break;
      case DiffusionVariant::kTransitionWalk: os << "transition"; break;
      case DiffusionVariant::kNormalizedLaplacianTheta: os << "theta:" << p.diffusion->theta; break;
    }
    os << " diffusion_steps=" << p.diffusion->steps;
  }
  return os.str();
}

}  // namespace hone
