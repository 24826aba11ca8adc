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

#include "hone/linop.hpp"

#include <algorithm>
#include <stdexcept>

namespace hone {

CompositionOrder default_order(MotifMatrixKind kind) {
  return kind == MotifMatrixKind::kTransition ? CompositionOrder::kPsiThenPower
                                              : CompositionOrder::kPowerThenPsi;
}

KStepOperator::KStepOperator(const MotifWeightedGraph& base, MotifMatrixKind kind, int k)
    : KStepOperator(base, kind, k, default_order(kind)) {}

KStepOperator::KStepOperator(const MotifWeightedGraph& base, MotifMatrixKind kind, int k,
                             CompositionOrder order)
    : W_(base.W), kind_(kind), k_(k), order_(order) {
  if (k < 1) throw std::invalid_argument("k-step operator needs k >= 1");
  const Eigen::Index n = W_.rows();
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  degree_ = W_ * ones;
  if (order_ == CompositionOrder::kPowerThenPsi) {
    for (int step = 1; step < k_; ++step) degree_ = W_ * degree_;
  }
  inv_degree_ = Eigen::VectorXd::Zero(n);
  inv_sqrt_degree_ = Eigen::VectorXd::Zero(n);
  active_ = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (degree_[i] > 0.0) {
      inv_degree_[i] = 1.0 / degree_[i];
      inv_sqrt_degree_[i] = 1.0 / std::sqrt(degree_[i]);
      active_[i] = 1.0;
    }
  }
}

Eigen::MatrixXd KStepOperator::power(const Eigen::MatrixXd& X) const {
  Eigen::MatrixXd Y = W_ * X;
  for (int step = 1; step < k_; ++step) Y = W_ * Y;
  return Y;
}

Eigen::MatrixXd KStepOperator::psi(const Eigen::MatrixXd& X) const {
  switch (kind_) {
    case MotifMatrixKind::kWeightedGraph:
      return W_ * X;
    case MotifMatrixKind::kTransition:
      return inv_degree_.asDiagonal() * (W_ * X);
    case MotifMatrixKind::kLaplacian:
      return degree_.asDiagonal() * X - W_ * X;
    case MotifMatrixKind::kNormalizedLaplacian: {
      Eigen::MatrixXd scaled = inv_sqrt_degree_.asDiagonal() * X;
      return active_.asDiagonal() * X - inv_sqrt_degree_.asDiagonal() * (W_ * scaled);
    }
    case MotifMatrixKind::kRandomWalkLaplacian:
      return active_.asDiagonal() * X - inv_degree_.asDiagonal() * (W_ * X);
  }
  throw std::logic_error("unhandled kind");
}

Eigen::MatrixXd KStepOperator::psi_transpose(const Eigen::MatrixXd& X) const {
  switch (kind_) {
    case MotifMatrixKind::kTransition: {
      Eigen::MatrixXd scaled = inv_degree_.asDiagonal() * X;
      return W_ * scaled;
    }
    case MotifMatrixKind::kRandomWalkLaplacian: {
      Eigen::MatrixXd scaled = inv_degree_.asDiagonal() * X;
      return active_.asDiagonal() * X - W_ * scaled;
    }
    default:
      return psi(X);
  }
}

Eigen::MatrixXd KStepOperator::apply(const Eigen::MatrixXd& X) const {
  if (X.rows() != rows()) throw std::invalid_argument("operator dimension mismatch");
  if (order_ == CompositionOrder::kPsiThenPower) {
    Eigen::MatrixXd Y = psi(X);
    for (int step = 1; step < k_; ++step) Y = psi(Y);
    return Y;
  }
  switch (kind_) {
    case MotifMatrixKind::kWeightedGraph:
      return power(X);
    case MotifMatrixKind::kTransition:
      return inv_degree_.asDiagonal() * power(X);
    case MotifMatrixKind::kLaplacian:
      return degree_.asDiagonal() * X - power(X);
    case MotifMatrixKind::kNormalizedLaplacian: {
      Eigen::MatrixXd scaled = inv_sqrt_degree_.asDiagonal() * X;
      return active_.asDiagonal() * X - inv_sqrt_degree_.asDiagonal() * power(scaled);
    }
    case MotifMatrixKind::kRandomWalkLaplacian:
      return active_.asDiagonal() * X - inv_degree_.asDiagonal() * power(X);
  }
  throw std::logic_error("unhandled kind");
}

Eigen::MatrixXd KStepOperator::apply_transpose(const Eigen::MatrixXd& X) const {
  if (X.rows() != rows()) throw std::invalid_argument("operator dimension mismatch");
  if (is_symmetric_kind(kind_)) return apply(X);
  if (order_ == CompositionOrder::kPsiThenPower) {
    Eigen::MatrixXd Y = psi_transpose(X);
    for (int step = 1; step < k_; ++step) Y = psi_transpose(Y);
    return Y;
  }
  // W^k is symmetric, so (D^-1 W^k)^T X = W^k D^-1 X.
  Eigen::MatrixXd scaled = inv_degree_.asDiagonal() * X;
  if (kind_ == MotifMatrixKind::kTransition) return power(scaled);
  return active_.asDiagonal() * X - power(scaled);
}

Eigen::MatrixXd KStepOperator::materialize() const {
  const Eigen::Index n = rows();
  Eigen::MatrixXd S(n, n);
  constexpr Eigen::Index kBlock = 256;
  for (Eigen::Index c = 0; c < n; c += kBlock) {
    const Eigen::Index width = std::min(kBlock, n - c);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, width);
    for (Eigen::Index j = 0; j < width; ++j) E(c + j, j) = 1.0;
    S.middleCols(c, width) = apply(E);
  }
  return S;
}

Eigen::VectorXd matvec_kstep(const KStepOperator& op, const Eigen::VectorXd& x) {
  return op.apply(x);
}

Eigen::VectorXd transpose_matvec_kstep(const KStepOperator& op, const Eigen::VectorXd& x) {
  return op.apply_transpose(x);
}

}  // namespace hone
