//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_PREDICTORS_MLP_H_
#define MOLFP_PREDICTORS_MLP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "molfp/numerics/tensor.h"

namespace molfp::predictors {

using Matrix = numerics::Tensor<double>;

enum class Task { kRegression, kClassification };

struct MlpConfig {
  std::size_t hidden = 100;
  double lr = 1e-3;
  // Weight penalty (alpha / 2) ||W||^2 added to the mean batch loss; biases
  // are not penalized.
  double alpha = 1e-4;
  std::size_t batch_size = 200;
  std::size_t max_epochs = 200;
  // Epochs without an improvement of more than `tolerance` before stopping.
  std::size_t patience = 10;
  double tolerance = 1e-4;
  // Share of rows held out for early stopping. Only used with at least
  // `min_rows_for_validation` rows; smaller sets monitor the training loss.
  double validation_fraction = 0.1;
  std::size_t min_rows_for_validation = 20;
  std::uint64_t seed = 0;
};

// d -> hidden (ReLU) -> 1. Regression uses squared error; classification a
// sigmoid output with log-loss.
struct MlpModel {
  Task task = Task::kRegression;
  std::size_t inputs = 0;
  std::size_t hidden = 0;
  std::vector<double> w1;  // [inputs, hidden]
  std::vector<double> b1;  // [hidden]
  std::vector<double> w2;  // [hidden]
  double b2 = 0.0;
  std::size_t epochs = 0;
};

// Adam on shuffled mini-batches of min(batch_size, n) rows. With a
// validation split the weights of the best validation epoch are returned.
// Throws Error("predictors.too_few_rows") for n < 2,
// Error("predictors.diverged") on a non-finite loss, and the label errors of
// logistic_fit for classification.
MlpModel mlp_fit(const Matrix &x, std::span<const double> y, Task task,
                 const MlpConfig &config = {});

// Regression values or positive-class probabilities in (0, 1).
std::vector<double> predict(const MlpModel &model, const Matrix &x);

}  // namespace molfp::predictors

#endif  // MOLFP_PREDICTORS_MLP_H_
