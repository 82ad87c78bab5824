//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_PREDICTORS_LINEAR_H_
#define MOLFP_PREDICTORS_LINEAR_H_

#include <cstddef>
#include <span>
#include <vector>

#include "molfp/numerics/tensor.h"

namespace molfp::predictors {

using Matrix = numerics::Tensor<double>;

struct RidgeModel {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 1.0;
};

// argmin over (w, b) of ||Xw + b - y||^2 + lambda ||w||^2 for X [n, d].
// For lambda > 0 solves the centered normal equations (or their n x n dual
// when n < d) by Cholesky; lambda = 0 gives the minimum-norm least-squares
// solution via a complete orthogonal decomposition. Throws Error("predictors.non_finite") on NaN/Inf input
// and Error("predictors.shape") on mismatched sizes.
RidgeModel ridge_fit(const Matrix &x, std::span<const double> y,
                     double lambda = 1.0);

struct LogisticOptions {
  double lambda = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iterations = 5000;
};

struct LogisticModel {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 1.0;
  std::size_t iterations = 0;
  // Euclidean norm of the full (w, b) gradient at the returned point.
  double gradient_norm = 0.0;
  // Objective after each accepted step, starting with the initial point.
  std::vector<double> objective_trace;
};

// (1/n) sum_i log(1 + exp(z_i)) - y_i z_i  +  (lambda / n) ||w||^2.
double logistic_objective(const Matrix &x, std::span<const double> y,
                          std::span<const double> w, double b, double lambda);

// Full-batch gradient descent from zero, diagonally preconditioned, with
// Barzilai-Borwein step guesses and Armijo backtracking, until the gradient norm drops below the tolerance
// or the iteration budget runs out. Labels must be 0 or 1 with both present:
// Error("predictors.single_class") / Error("predictors.labels").
LogisticModel logistic_fit(const Matrix &x, std::span<const double> y,
                           const LogisticOptions &options = {});

// Throw Error("predictors.dimension") if x has the wrong width. Logistic
// predictions are positive-class probabilities, clamped into (0, 1).
std::vector<double> predict(const RidgeModel &model, const Matrix &x);
std::vector<double> predict(const LogisticModel &model, const Matrix &x);

}  // namespace molfp::predictors

#endif  // MOLFP_PREDICTORS_LINEAR_H_
