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

#include <Eigen/Dense>

#include "hone/motif_matrix.hpp"

namespace hone {

// Action of a real matrix S on blocks of vectors.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;
  virtual Eigen::Index rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  // S * X
  virtual Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const = 0;
  // S^T * X
  virtual Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& X) const = 0;
};

// Non-owning view of a dense matrix.
class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(const Eigen::MatrixXd& S) : S_(S) {}
  Eigen::Index rows() const override { return S_.rows(); }
  Eigen::Index cols() const override { return S_.cols(); }
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const override { return S_ * X; }
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& X) const override {
    return S_.transpose() * X;
  }

 private:
  const Eigen::MatrixXd& S_;
};

enum class CompositionOrder {
  kPowerThenPsi,  // S = Psi(W^k)
  kPsiThenPower,  // S = Psi(W)^k
};

// The order each kind uses by default: transition matrices are powered
// after normalizing, Laplacian kinds are rebuilt from the degrees of W^k.
CompositionOrder default_order(MotifMatrixKind kind);

// Implicit k-step motif matrix. Nothing larger than the base W is ever
// stored; one application costs k sparse products with W (plus O(N)).
class KStepOperator final : public LinearOperator {
 public:
  KStepOperator(const MotifWeightedGraph& base, MotifMatrixKind kind, int k);
  KStepOperator(const MotifWeightedGraph& base, MotifMatrixKind kind, int k,
                CompositionOrder order);

  Eigen::Index rows() const override { return W_.rows(); }
  Eigen::Index cols() const override { return W_.rows(); }
  MotifMatrixKind kind() const { return kind_; }
  int steps() const { return k_; }
  CompositionOrder order() const { return order_; }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const override;
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& X) const override;

  // Dense S, built column block by column block. Test and small-graph use.
  Eigen::MatrixXd materialize() const;

 private:
  Eigen::MatrixXd power(const Eigen::MatrixXd& X) const;        // W^k X
  Eigen::MatrixXd psi(const Eigen::MatrixXd& X) const;          // Psi(W) X
  Eigen::MatrixXd psi_transpose(const Eigen::MatrixXd& X) const;

  SparseMatrix W_;
  MotifMatrixKind kind_;
  int k_;
  CompositionOrder order_;
  // Row sums of W (for Psi(W)) or of W^k (for Psi(W^k)), and their
  // reciprocal / reciprocal square root with zeros where the sum is zero.
  Eigen::VectorXd degree_;
  Eigen::VectorXd inv_degree_;
  Eigen::VectorXd inv_sqrt_degree_;
  Eigen::VectorXd active_;  // 1 where degree_ > 0
};

Eigen::VectorXd matvec_kstep(const KStepOperator& op, const Eigen::VectorXd& x);
Eigen::VectorXd transpose_matvec_kstep(const KStepOperator& op, const Eigen::VectorXd& x);

}  // namespace hone
