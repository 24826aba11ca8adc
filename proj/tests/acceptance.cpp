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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   hone_acceptance              run every criterion
//   hone_acceptance 3 5          run the listed criteria only

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "hone/bench.hpp"
#include "hone/embed.hpp"
#include "hone/eval.hpp"
#include "hone/factorize.hpp"
#include "hone/generators.hpp"
#include "hone/linop.hpp"
#include "hone/motif_count.hpp"
#include "hone/motif_matrix.hpp"
#include "test_util.hpp"

using namespace hone;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(double x, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << x;
  return os.str();
}

const MotifMatrixKind kKinds[] = {
    MotifMatrixKind::kWeightedGraph, MotifMatrixKind::kTransition, MotifMatrixKind::kLaplacian,
    MotifMatrixKind::kNormalizedLaplacian, MotifMatrixKind::kRandomWalkLaplacian};

std::vector<Graph> fixtures() {
  return {complete_graph(4), path_graph(4),  cycle_graph(4),   cycle_graph(5),
          cycle_graph(6),    star_graph(3), petersen_graph()};
}

std::vector<Graph> random_graphs(int count, std::size_t max_n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double ps[] = {0.1, 0.3, 0.5};
  std::vector<Graph> out;
  for (int i = 0; i < count; ++i) {
    const std::size_t n = 5 + rng() % (max_n - 4);
    out.push_back(erdos_renyi(n, ps[i % 3], rng()));
  }
  return out;
}

Outcome orbit_oracle() {
  const auto start = Clock::now();
  std::vector<Graph> graphs = random_graphs(50, 30, 101);
  for (auto& g : fixtures()) graphs.push_back(std::move(g));
  std::size_t mismatched = 0, edges = 0;
  for (const Graph& g : graphs) {
    if (!(count_edge_orbits(g) == brute_force_orbit_counts(g))) ++mismatched;
    edges += g.num_edges();
  }
  const double t = seconds_since(start);
  return {mismatched == 0 && t < 10.0, std::to_string(graphs.size()) + " graphs, " +
                                           std::to_string(edges) + " edges, " +
                                           std::to_string(mismatched) + " mismatched, " +
                                           fmt(t) + " s (limit 10 s)"};
}

Outcome closed_forms() {
  std::size_t violations = 0, checked = 0;
  for (std::size_t n = 4; n <= 8; ++n) {
    const Graph g = complete_graph(n);
    const EdgeOrbitCounts c = count_edge_orbits(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      ++checked;
      if (c.at(e, Orbit::kTriangle) != n - 2) ++violations;
      if (c.at(e, Orbit::kClique) != (n - 2) * (n - 3) / 2) ++violations;
    }
  }
  std::vector<Graph> graphs = random_graphs(50, 30, 101);
  for (auto& g : fixtures()) graphs.push_back(std::move(g));
  for (auto& g : random_graphs(20, 100, 202)) graphs.push_back(std::move(g));
  for (const Graph& g : graphs) {
    const EdgeOrbitCounts c = count_edge_orbits(g);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto [u, v] = g.edge(e);
      ++checked;
      const std::uint64_t expect = g.degree(u) + g.degree(v) - 2 - 2 * c.at(e, Orbit::kTriangle);
      if (c.at(e, Orbit::kWedge) != expect) ++violations;
    }
  }
  return {violations == 0,
          std::to_string(checked) + " edge checks, " + std::to_string(violations) + " violations"};
}

Outcome motif_matrix_invariants() {
  std::mt19937_64 rng(303);
  double worst_row = 0.0, worst_lap = 0.0, min_ev = 0.0, max_ev = 0.0;
  std::size_t nnz_violations = 0, matrices = 0;
  for (int i = 0; i < 20; ++i) {
    const Graph g = erdos_renyi(20 + rng() % 81, 0.1 + 0.05 * (i % 4), rng());
    const EdgeOrbitCounts c = count_edge_orbits(g);
    const auto nnz_a = static_cast<Eigen::Index>(2 * g.num_edges());
    for (Orbit t : all_orbits()) {
      const MotifWeightedGraph w = build_motif_weight_matrix(g, c, t);
      if (w.W.nonZeros() > nnz_a) ++nnz_violations;
      if (w.empty()) continue;
      ++matrices;
      const Eigen::VectorXd deg = motif_degrees(w);
      const SparseMatrix P = apply_psi(w, MotifMatrixKind::kTransition);
      const Eigen::VectorXd rows = P * Eigen::VectorXd::Ones(P.cols());
      for (Eigen::Index r = 0; r < rows.size(); ++r)
        if (deg[r] > 0) worst_row = std::max(worst_row, std::abs(rows[r] - 1.0));
      const SparseMatrix L = apply_psi(w, MotifMatrixKind::kLaplacian);
      worst_lap = std::max(worst_lap, (L * Eigen::VectorXd::Ones(L.cols())).cwiseAbs().maxCoeff());
      const Eigen::MatrixXd N(apply_psi(w, MotifMatrixKind::kNormalizedLaplacian));
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(N).eigenvalues();
      min_ev = std::min(min_ev, ev.minCoeff());
      max_ev = std::max(max_ev, ev.maxCoeff());
    }
  }
  const bool pass = worst_row <= 1e-12 && worst_lap <= 1e-12 && min_ev >= -1e-9 &&
                    max_ev <= 2.0 + 1e-9 && nnz_violations == 0;
  return {pass, std::to_string(matrices) + " matrices; max |P1-1| " + fmt(worst_row) +
                    ", max |L1| " + fmt(worst_lap) + ", Lhat spectrum [" + fmt(min_ev) + ", " +
                    fmt(max_ev) + "], nnz(W)>nnz(A) in " + std::to_string(nnz_violations)};
}

Outcome operator_correctness() {
  std::mt19937_64 rng(404);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  int cases = 0;
  for (int i = 0; i < 10; ++i) {
    const Graph g = erdos_renyi(50 + rng() % 151, 0.05, rng());
    const EdgeOrbitCounts c = count_edge_orbits(g);
    const MotifWeightedGraph w =
        build_motif_weight_matrix(g, c, i % 2 ? Orbit::kWedge : Orbit::kEdge);
    const Eigen::MatrixXd Wd(w.W);
    Eigen::VectorXd x(w.size());
    for (Eigen::Index j = 0; j < x.size(); ++j) x[j] = normal(rng);
    for (MotifMatrixKind kind : kKinds) {
      for (int k = 1; k <= 3; ++k) {
        const Eigen::VectorXd expect = hone::testing::dense_kstep(Wd, kind, k) * x;
        const Eigen::VectorXd got = matvec_kstep(KStepOperator(w, kind, k), x);
        worst = std::max(worst, (got - expect).norm() / std::max(expect.norm(), 1e-300));
        ++cases;
      }
    }
  }

  // Wall time of one block application against k, fitted through the origin.
  const Graph big = erdos_renyi(100000, 10.0 / 99999.0, 405);
  const MotifWeightedGraph w = build_motif_weight_matrix(big, count_edge_orbits(big), Orbit::kEdge);
  const Eigen::MatrixXd X = Eigen::MatrixXd::Ones(w.size(), 8);
  std::vector<double> times;
  for (int k = 1; k <= 4; ++k) {
    const KStepOperator op(w, MotifMatrixKind::kLaplacian, k);
    double best = 1e300;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t = Clock::now();
      const Eigen::MatrixXd Y = op.apply(X);
      best = std::min(best, seconds_since(t));
      if (!Y.allFinite()) best = 1e300;
    }
    times.push_back(best);
  }
  double num = 0.0, den = 0.0;
  for (int k = 1; k <= 4; ++k) {
    num += k * times[k - 1];
    den += k * k;
  }
  const double slope = num / den;
  double worst_ratio = 1.0;
  for (int k = 1; k <= 4; ++k) {
    const double r = times[k - 1] / (slope * k);
    worst_ratio = std::max({worst_ratio, r, 1.0 / r});
  }
  std::string ts;
  for (double t : times) ts += (ts.empty() ? "" : ",") + fmt(t * 1e3, 3);
  return {worst <= 1e-10 && worst_ratio <= 1.5,
          std::to_string(cases) + " kind/k/graph cases, max rel err " + fmt(worst) +
              "; matvec ms k=1..4 [" + ts + "], max deviation from linear x" + fmt(worst_ratio, 3) +
              " (limit 1.5)"};
}

double optimal_residual(const Eigen::MatrixXd& S, int r) {
  const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(S).singularValues();
  return std::sqrt(s.tail(std::max<Eigen::Index>(0, s.size() - r)).squaredNorm()) / s.norm();
}

Outcome factorization_quality() {
  std::mt19937_64 rng(505);
  double worst_ratio = 0.0;
  int retries = 0;
  for (int i = 0; i < 10; ++i) {
    const Graph g = erdos_renyi(100 + rng() % 101, 0.06, rng());
    const MotifWeightedGraph w = build_motif_weight_matrix(g, count_edge_orbits(g),
                                                           i % 2 ? Orbit::kWedge : Orbit::kEdge);
    const KStepOperator op(w, kKinds[i % 5], 1 + i % 3);
    const Eigen::MatrixXd S = op.materialize();
    const double best = optimal_residual(S, 16);
    double ratio = 1e300;
    // up to 3 retries with fresh seeds
    for (int attempt = 0; attempt < 4 && ratio > 1.5; ++attempt) {
      if (attempt > 0) ++retries;
      FactorizeConfig cfg;
      cfg.seed = rng();
      const LowRankFactors f = randomized_low_rank(op, cfg);
      ratio = relative_residual(S, f) / std::max(best, 1e-300);
    }
    worst_ratio = std::max(worst_ratio, ratio);
  }

  bool monotone = true;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 r(seed);
    std::normal_distribution<double> normal;
    Eigen::MatrixXd S(50, 50);
    for (Eigen::Index j = 0; j < S.size(); ++j) S.data()[j] = normal(r);
    FactorizeConfig cfg;
    cfg.rank = 10;
    cfg.seed = seed;
    cfg.ccd.tol = 0.0;
    const LowRankFactors f = ccd_factorize(S, cfg);
    for (std::size_t s = 1; s < f.objective.size(); ++s)
      if (f.objective[s] > f.objective[s - 1] * (1.0 + 1e-12)) monotone = false;
  }

  std::mt19937_64 r(606);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd A(80, 5), B(5, 60);
  for (Eigen::Index j = 0; j < A.size(); ++j) A.data()[j] = normal(r);
  for (Eigen::Index j = 0; j < B.size(); ++j) B.data()[j] = normal(r);
  const Eigen::MatrixXd S = A * B;
  FactorizeConfig rc;
  rc.rank = 5;
  const double rsvd_exact = relative_residual(S, randomized_low_rank(DenseOperator(S), rc));
  FactorizeConfig cc = rc;
  cc.ccd.reg = 0.0;
  cc.ccd.tol = 1e-15;
  cc.ccd.max_sweeps = 5000;
  const double ccd_exact = relative_residual(S, ccd_factorize(S, cc));

  const bool pass = worst_ratio <= 1.5 && monotone && rsvd_exact <= 1e-6 && ccd_exact <= 1e-6;
  return {pass, "rsvd/optimal residual max " + fmt(worst_ratio) + " (limit 1.5, " +
                    std::to_string(retries) + " retries); CCD monotone " +
                    (monotone ? "yes" : "no") + "; exact-rank residual rsvd " + fmt(rsvd_exact) +
                    ", ccd " + fmt(ccd_exact)};
}

Outcome determinism() {
  const Graph g = stochastic_block_model({100, 100}, 0.15, 0.01, 7);
  PipelineConfig cfg;
  cfg.seed = 3;
  const PipelineResult a = run_pipeline(g, cfg);
  const PipelineResult b = run_pipeline(g, cfg);
  const bool z_same = a.global.Z == b.global.Z;

  ExperimentConfig ec;
  ec.k_grid = {1, 2};
  ec.num_seeds = 2;
  const EvalReport ra = run_experiment(g, ec);
  const EvalReport rb = run_experiment(g, ec);
  bool report_same = ra.mean_auc == rb.mean_auc && ra.std_auc == rb.std_auc &&
                     ra.selected_K == rb.selected_K && ra.config == rb.config &&
                     ra.runs.size() == rb.runs.size();
  for (std::size_t i = 0; report_same && i < ra.runs.size(); ++i) {
    report_same = ra.runs[i].seed == rb.runs[i].seed && ra.runs[i].K == rb.runs[i].K &&
                  ra.runs[i].lambda == rb.runs[i].lambda && ra.runs[i].auc == rb.runs[i].auc &&
                  ra.runs[i].selection_auc == rb.runs[i].selection_auc;
  }
  return {z_same && report_same, std::string("Z bit-identical ") + (z_same ? "yes" : "no") +
                                     ", EvalReport identical " + (report_same ? "yes" : "no")};
}

ExperimentConfig hone_w_config() {
  ExperimentConfig cfg;
  cfg.pipeline.kind = MotifMatrixKind::kWeightedGraph;
  cfg.k_grid = {1, 2};
  cfg.num_seeds = 10;
  return cfg;
}

const Graph& sbm_graph() {
  static const Graph g = stochastic_block_model({100, 100}, 0.15, 0.01, 2024);
  return g;
}

double sbm_baseline_auc() {
  static const double auc = run_experiment(sbm_graph(), hone_w_config()).mean_auc;
  return auc;
}

Outcome link_prediction() {
  const auto start = Clock::now();
  const double sbm = sbm_baseline_auc();
  const Graph er = erdos_renyi(200, 10.0 / 199.0, 2025);
  const double control = run_experiment(er, hone_w_config()).mean_auc;
  const double t = seconds_since(start);
  return {sbm >= 0.75 && control <= 0.65 && t < 120.0,
          "SBM mean AUC " + fmt(sbm) + " (floor 0.75); ER control " + fmt(control) +
              " (ceiling 0.65); " + fmt(t) + " s (limit 120 s)"};
}

Outcome diffusion_sanity() {
  const double base = sbm_baseline_auc();
  ExperimentConfig cfg = hone_w_config();
  cfg.pipeline.diffusion = DiffusionConfig{};
  cfg.pipeline.diffusion->kind = cfg.pipeline.kind;
  const double with_attrs = run_experiment(sbm_graph(), cfg).mean_auc;
  return {with_attrs >= base - 0.02,
          "SBM mean AUC with attributes " + fmt(with_attrs) + " vs " + fmt(base) +
              " without (allowed drop 0.02)"};
}

Outcome auc_correctness() {
  std::mt19937_64 rng(909);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 199;
    std::vector<double> s(n);
    std::vector<int> y(n);
    std::uniform_int_distribution<int> level(0, 20);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial % 2 ? level(rng) * 0.05 : std::uniform_real_distribution<double>()(rng);
      y[i] = static_cast<int>(rng() % 2);
    }
    y[0] = 1;
    y[n - 1] = 0;
    double wins = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (y[i] == 1 && y[j] == 0) {
          pairs += 1.0;
          wins += s[i] > s[j] ? 1.0 : (s[i] == s[j] ? 0.5 : 0.0);
        }
    worst = std::max(worst, std::abs(auc(s, y) - wins / pairs));
  }
  const double tie = auc(std::vector<double>(10, 0.3), std::vector<int>{1, 0, 1, 0, 1, 0, 0, 0, 1, 1});
  return {worst <= 1e-12 && tie == 0.5,
          "100 sets, max |auc - pairwise| " + fmt(worst) + "; full tie " + fmt(tie)};
}

Outcome scaling() {
  const auto start = Clock::now();
  PipelineConfig cfg;
  cfg.kind = MotifMatrixKind::kTransition;
  cfg.K = 2;
  cfg.local_rank = 16;
  cfg.global_rank = 128;
  cfg.seed = 1;
  const std::vector<BenchRow> rows = bench_scaling({1000, 10000, 100000}, 10.0, cfg);
  const double t = seconds_since(start);
  write_bench_tsv(std::cout, rows);
  bool ok = rows.size() == 3;
  bool monotone = true, accounted = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].error) ok = false;
    if (i > 0 && rows[i].timings.total_seconds < rows[i - 1].timings.total_seconds) monotone = false;
    const auto& tm = rows[i].timings;
    const double parts = tm.count_seconds + tm.local_seconds + tm.diffusion_seconds + tm.global_seconds;
    if (std::abs(parts - tm.total_seconds) > 0.1 * tm.total_seconds) accounted = false;
  }
  const double slope = ok ? loglog_slope(rows) : 1e300;
  return {ok && slope <= 1.4 && t < 900.0 && monotone && accounted,
          "log-log slope " + fmt(slope) + " (limit 1.4); total times monotone " +
              (monotone ? "yes" : "no") + ", stages sum to total " + (accounted ? "yes" : "no") +
              "; " + fmt(t) + " s (limit 900 s)"};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "orbit counts equal the brute-force oracle", orbit_oracle},
      {2, "closed forms on K_n and the wedge identity", closed_forms},
      {3, "motif matrix invariants", motif_matrix_invariants},
      {4, "implicit k-step operator correctness and cost", operator_correctness},
      {5, "factorization quality", factorization_quality},
      {6, "pipeline determinism", determinism},
      {7, "link prediction floors (SBM / ER control)", link_prediction},
      {8, "attribute diffusion does not degrade AUC", diffusion_sanity},
      {9, "AUC correctness", auc_correctness},
      {10, "linear scaling of the pipeline", scaling},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
