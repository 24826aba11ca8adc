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
#include <vector>

#include <Eigen/Dense>

#include "hone/linop.hpp"

namespace hone {

enum class FactorizeMethod { kRandomizedSvd, kCcd };

struct CcdOptions {
  double reg = 1e-4;        // lambda in 1/2||S - UV||^2 + lambda(||U||^2 + ||V||^2)
  int max_sweeps = 50;
  double tol = 1e-5;        // stop when the relative objective decrease drops below
};

struct FactorizeConfig {
  int rank = 16;
  int oversampling = 10;
  int power_iterations = 2;
  FactorizeMethod method = FactorizeMethod::kRandomizedSvd;
  CcdOptions ccd;
  std::uint64_t seed = 0;
  // Compute the relative Frobenius residual when N is at most this.
  Eigen::Index residual_max_nodes = 0;
};

// S ~= U V with U: N x rank, V: rank x cols. Columns of U (rows of V) past
// achieved_rank are zero.
struct LowRankFactors {
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
  int achieved_rank = 0;
  std::optional<double> residual;  // ||S - UV||_F / ||S||_F
  // CCD only: objective after each sweep (index 0 is the initial value).
  std::vector<double> objective;
};

// Randomized range finder with q power iterations, then a small dense SVD.
// U carries the singular values (U = Q Ut Sigma), V = Vt^T.
LowRankFactors randomized_low_rank(const LinearOperator& op, const FactorizeConfig& cfg);

// Cyclic coordinate descent on 1/2||S - UV||_F^2 + lambda(||U||_F^2 + ||V||_F^2).
// U starts uniform in +-0.5/sqrt(rank) from the seed and V at zero; each sweep
// updates every entry of V, then every entry of U, in closed form.
LowRankFactors ccd_factorize(const Eigen::MatrixXd& S, const FactorizeConfig& cfg);

// Scales each nonzero column to unit Euclidean norm, in place.
void normalize_columns(Eigen::MatrixXd& M);
Eigen::MatrixXd normalized_columns(Eigen::MatrixXd M);

// ||S - UV||_F / ||S||_F, or the absolute residual when S is zero.
double relative_residual(const Eigen::MatrixXd& S, const LowRankFactors& f);

}  // namespace hone
