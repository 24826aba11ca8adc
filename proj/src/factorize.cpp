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

#include "hone/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace hone {

namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = normal(rng);
  return M;
}

Eigen::MatrixXd materialize(const LinearOperator& op) {
  return op.apply(Eigen::MatrixXd::Identity(op.cols(), op.cols()));
}

// ||S - U V||_F^2 evaluated in row blocks to bound the temporary.
double residual_squared(const Eigen::MatrixXd& S, const Eigen::MatrixXd& U,
                        const Eigen::MatrixXd& V) {
  constexpr Eigen::Index kRows = 2048;
  double total = 0.0;
  for (Eigen::Index r = 0; r < S.rows(); r += kRows) {
    const Eigen::Index h = std::min(kRows, S.rows() - r);
    total += (S.middleRows(r, h) - U.middleRows(r, h) * V).squaredNorm();
  }
  return total;
}

// Rank of a symmetric positive semidefinite Gram matrix.
Eigen::Index numerical_rank(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev.size() == 0 || ev.maxCoeff() <= 0.0) return 0;
  const double cutoff = ev.maxCoeff() * 1e-12;
  return (ev.array() > cutoff).count();
}

}  // namespace

LowRankFactors randomized_low_rank(const LinearOperator& op, const FactorizeConfig& cfg) {
  if (cfg.rank < 1) throw std::invalid_argument("rank must be >= 1");
  const Eigen::Index n = op.rows();
  const Eigen::Index m = op.cols();
  const Eigen::Index rank = cfg.rank;
  // Oversampling is clipped on inputs smaller than rank + p.
  const Eigen::Index width =
      std::min<Eigen::Index>(rank + std::max(0, cfg.oversampling), std::min(n, m));

  LowRankFactors out;
  out.U = Eigen::MatrixXd::Zero(n, rank);
  out.V = Eigen::MatrixXd::Zero(rank, m);
  if (width == 0) return out;

  Eigen::MatrixXd Y = op.apply(gaussian_matrix(m, width, cfg.seed));
  for (int q = 0; q < cfg.power_iterations; ++q) {
    Eigen::MatrixXd Z = orthonormal_basis(op.apply_transpose(orthonormal_basis(Y)));
    Y = op.apply(Z);
  }
  const Eigen::MatrixXd Q = orthonormal_basis(Y);
  const Eigen::MatrixXd B = op.apply_transpose(Q);  // S ~= Q B^T

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = sigma.size() > 0 && sigma[0] > 0.0
                            ? sigma[0] * static_cast<double>(std::max(n, m)) *
                                  std::numeric_limits<double>::epsilon()
                            : std::numeric_limits<double>::infinity();
  const Eigen::Index keep = std::min<Eigen::Index>(rank, sigma.size());
  int achieved = 0;
  for (Eigen::Index c = 0; c < keep; ++c) {
    if (!(sigma[c] > cutoff)) break;
    out.U.col(c) = Q * svd.matrixV().col(c) * sigma[c];
    out.V.row(c) = svd.matrixU().col(c).transpose();
    ++achieved;
  }
  out.achieved_rank = achieved;

  if (n <= cfg.residual_max_nodes) {
    const Eigen::MatrixXd S = materialize(op);
    out.residual = relative_residual(S, out);
  }
  return out;
}

LowRankFactors ccd_factorize(const Eigen::MatrixXd& S, const FactorizeConfig& cfg) {
  if (cfg.rank < 1) throw std::invalid_argument("rank must be >= 1");
  const Eigen::Index n = S.rows();
  const Eigen::Index m = S.cols();
  const Eigen::Index r = cfg.rank;
  const double lambda = cfg.ccd.reg;

  std::mt19937_64 rng(cfg.seed);
  const double bound = 0.5 / std::sqrt(static_cast<double>(r));
  std::uniform_real_distribution<double> unif(-bound, bound);
  // Row i of U lives in column i of Ut while sweeping.
  Eigen::MatrixXd Ut(r, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index s = 0; s < r; ++s) Ut(s, i) = unif(rng);
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(r, m);

  auto objective = [&](const Eigen::MatrixXd& U) {
    return 0.5 * residual_squared(S, U, V) + lambda * (U.squaredNorm() + V.squaredNorm());
  };

  // Cyclic closed-form updates of each column of X (r x cols) against the
  // normal equations G x = b, i.e. minimizing 1/2 x'Gx - b'x + lambda|x|^2.
  auto sweep_columns = [lambda](Eigen::MatrixXd& X, const Eigen::MatrixXd& rhs,
                                const Eigen::MatrixXd& G) {
    const Eigen::Index rr = X.rows();
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
      auto x = X.col(j);
      for (Eigen::Index s = 0; s < rr; ++s) {
        const double denom = G(s, s) + 2.0 * lambda;
        if (denom <= 0.0) {
          x[s] = 0.0;
          continue;
        }
        const double num = rhs(s, j) - G.col(s).dot(x) + G(s, s) * x[s];
        x[s] = num / denom;
      }
    }
  };

  LowRankFactors out;
  Eigen::MatrixXd U = Ut.transpose();
  out.objective.push_back(objective(U));
  for (int sweep = 0; sweep < cfg.ccd.max_sweeps; ++sweep) {
    {
      const Eigen::MatrixXd rhs = U.transpose() * S;  // r x m
      const Eigen::MatrixXd G = U.transpose() * U;
      sweep_columns(V, rhs, G);
    }
    {
      const Eigen::MatrixXd rhs = V * S.transpose();  // r x n
      const Eigen::MatrixXd G = V * V.transpose();
      sweep_columns(Ut, rhs, G);
      U = Ut.transpose();
    }
    const double prev = out.objective.back();
    const double cur = objective(U);
    out.objective.push_back(cur);
    if (prev <= 0.0 || (prev - cur) <= cfg.ccd.tol * prev) break;
  }

  out.U = std::move(U);
  out.V = std::move(V);
  out.achieved_rank = static_cast<int>(std::min(numerical_rank(out.U.transpose() * out.U),
                                                 numerical_rank(out.V * out.V.transpose())));
  if (n <= cfg.residual_max_nodes) out.residual = relative_residual(S, out);
  return out;
}

void normalize_columns(Eigen::MatrixXd& M) {
  for (Eigen::Index j = 0; j < M.cols(); ++j) {
    const double norm = M.col(j).norm();
    if (norm > 0.0) M.col(j) /= norm;
  }
}

Eigen::MatrixXd normalized_columns(Eigen::MatrixXd M) {
  normalize_columns(M);
  return M;
}

double relative_residual(const Eigen::MatrixXd& S, const LowRankFactors& f) {
  const double err = std::sqrt(residual_squared(S, f.U, f.V));
  const double norm = S.norm();
  return norm > 0.0 ? err / norm : err;
}

}  // namespace hone
