//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/predictors/mlp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "common.h"
#include "molfp/numerics/adam.h"
#include "molfp/random.h"

namespace molfp::predictors {

namespace {

using numerics::Parameter;
using numerics::Tensor;
using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Map = Eigen::Map<RowMatrix>;
using ConstMap = Eigen::Map<const RowMatrix>;

ConstMap view(const Tensor<double> &t, std::size_t rows, std::size_t cols) {
  return ConstMap(t.data(), static_cast<Eigen::Index>(rows),
                  static_cast<Eigen::Index>(cols));
}

Map view(Tensor<double> &t, std::size_t rows, std::size_t cols) {
  return Map(t.data(), static_cast<Eigen::Index>(rows),
             static_cast<Eigen::Index>(cols));
}

struct Network {
  std::size_t d, h;
  Task task;
  Parameter<double> w1, b1, w2, b2;

  // Glorot-uniform weights and biases; the sigmoid output layer uses the
  // narrower bound sqrt(2 / fan).
  Network(std::size_t inputs, std::size_t hidden, Task t, Rng &rng)
      : d(inputs), h(hidden), task(t),
        w1("w1", Tensor<double>({ inputs, hidden })),
        b1("b1", Tensor<double>({ hidden })),
        w2("w2", Tensor<double>({ hidden, 1 })),
        b2("b2", Tensor<double>({ 1 })) {
    const double bound1 = std::sqrt(6.0 / static_cast<double>(inputs + hidden));
    const double bound2 =
        std::sqrt((t == Task::kClassification ? 2.0 : 6.0)
                  / static_cast<double>(hidden + 1));
    for (auto *p: { &w1, &b1 })
      for (double &v: p->value.values())
        v = rng.uniform(-bound1, bound1);
    for (auto *p: { &w2, &b2 })
      for (double &v: p->value.values())
        v = rng.uniform(-bound2, bound2);
  }

  // Output margins for rows of x; hidden activations into `hidden_out`.
  Eigen::VectorXd forward(const RowMatrix &x, RowMatrix &hidden_out) const {
    hidden_out = x * view(w1.value, d, h);
    hidden_out.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(
        b1.value.data(), static_cast<Eigen::Index>(h));
    hidden_out = hidden_out.cwiseMax(0.0);
    Eigen::VectorXd z = hidden_out * view(w2.value, h, 1);
    z.array() += b2.value[0];
    return z;
  }

  // Mean data loss over the rows.
  double data_loss(const Eigen::VectorXd &z, const Eigen::VectorXd &y) const {
    double total = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      if (task == Task::kClassification) {
        total += detail::softplus(z[i]) - y[i] * z[i];
      } else {
        const double e = z[i] - y[i];
        total += 0.5 * e * e;
      }
    }
    return total / static_cast<double>(z.size());
  }

  double penalty(double alpha) const {
    return 0.5 * alpha
           * (view(w1.value, d, h).squaredNorm()
              + view(w2.value, h, 1).squaredNorm());
  }

  // Fills parameter grads for the batch objective; returns its value.
  double backward(const RowMatrix &x, const Eigen::VectorXd &y, double alpha) {
    RowMatrix hidden;
    const Eigen::VectorXd z = forward(x, hidden);
    const double inv_m = 1.0 / static_cast<double>(x.rows());
    Eigen::VectorXd dz(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      dz[i] = inv_m
              * (task == Task::kClassification ? detail::sigmoid(z[i]) - y[i]
                                               : z[i] - y[i]);
    view(w2.grad, h, 1) = hidden.transpose() * dz + alpha * view(w2.value, h, 1);
    b2.grad[0] = dz.sum();
    RowMatrix dh = dz * view(w2.value, h, 1).transpose();
    dh = dh.cwiseProduct((hidden.array() > 0.0).cast<double>().matrix());
    view(w1.grad, d, h) = x.transpose() * dh + alpha * view(w1.value, d, h);
    view(b1.grad, 1, h) = dh.colwise().sum();
    return data_loss(z, y) + penalty(alpha);
  }
};

RowMatrix gather_rows(const Matrix &x, std::span<const std::size_t> rows) {
  RowMatrix out(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(x.cols()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          x.at(rows[i], j);
  return out;
}

Eigen::VectorXd gather(std::span<const double> y,
                       std::span<const std::size_t> rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = y[rows[i]];
  return out;
}

}  // namespace

MlpModel mlp_fit(const Matrix &x, std::span<const double> y, Task task,
                 const MlpConfig &config) {
  detail::check_training_data(x, y);
  const std::size_t n = x.rows();
  if (n < 2)
    throw Error("predictors.too_few_rows",
                "MLP needs at least 2 rows, got " + std::to_string(n));
  if (task == Task::kClassification)
    detail::check_binary(y);
  if (config.hidden == 0 || config.batch_size == 0)
    throw Error("predictors.config", "hidden and batch_size must be positive");

  Rng rng(config.seed);
  Network net(x.cols(), config.hidden, task, rng);

  std::vector<std::size_t> train(n);
  std::iota(train.begin(), train.end(), std::size_t { 0 });
  std::vector<std::size_t> validation;
  if (n >= config.min_rows_for_validation && config.validation_fraction > 0.0) {
    rng.shuffle(std::span(train));
    const auto held = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::llround(config.validation_fraction * static_cast<double>(n))));
    validation.assign(train.end() - static_cast<std::ptrdiff_t>(held), train.end());
    train.resize(n - held);
    std::sort(train.begin(), train.end());
  }
  RowMatrix x_val;
  Eigen::VectorXd y_val;
  if (!validation.empty()) {
    x_val = gather_rows(x, validation);
    y_val = gather(y, validation);
  }

  std::vector<Parameter<double> *> params { &net.w1, &net.b1, &net.w2, &net.b2 };
  numerics::AdamState<double> adam(numerics::AdamOptions { .lr = config.lr });
  const std::size_t batch = std::min(config.batch_size, train.size());

  double best = std::numeric_limits<double>::infinity();
  std::vector<Tensor<double>> best_weights;
  std::size_t stale = 0;
  std::size_t epoch = 0;
  std::vector<std::size_t> order = train;
  while (epoch < config.max_epochs) {
    ++epoch;
    rng.shuffle(std::span(order));
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t stop = std::min(order.size(), start + batch);
      const std::span<const std::size_t> rows(order.data() + start, stop - start);
      const double loss =
          net.backward(gather_rows(x, rows), gather(y, rows), config.alpha);
      if (!std::isfinite(loss))
        throw Error("predictors.diverged",
                    "MLP loss became non-finite at epoch " + std::to_string(epoch));
      epoch_loss += loss * static_cast<double>(rows.size());
      numerics::adam_step<double>(params, adam);
    }
    epoch_loss /= static_cast<double>(order.size());

    double score = epoch_loss;
    if (!validation.empty()) {
      RowMatrix hidden;
      score = net.data_loss(net.forward(x_val, hidden), y_val);
    }
    stale = score < best - config.tolerance ? 0 : stale + 1;
    if (score < best) {
      best = score;
      if (!validation.empty())
        best_weights = { net.w1.value, net.b1.value, net.w2.value, net.b2.value };
    }
    if (stale >= config.patience)
      break;
  }
  if (!best_weights.empty()) {
    net.w1.value = std::move(best_weights[0]);
    net.b1.value = std::move(best_weights[1]);
    net.w2.value = std::move(best_weights[2]);
    net.b2.value = std::move(best_weights[3]);
  }

  MlpModel model;
  model.task = task;
  model.inputs = x.cols();
  model.hidden = config.hidden;
  model.w1 = std::move(net.w1.value.storage());
  model.b1 = std::move(net.b1.value.storage());
  model.w2 = std::move(net.w2.value.storage());
  model.b2 = net.b2.value[0];
  model.epochs = epoch;
  for (double v: model.w1)
    if (!std::isfinite(v))
      throw Error("predictors.diverged", "MLP weights are not finite");
  return model;
}

std::vector<double> predict(const MlpModel &model, const Matrix &x) {
  detail::check_width(x, model.inputs);
  const std::size_t n = x.rows();
  const std::size_t h = model.hidden;
  const ConstMap w1(model.w1.data(), static_cast<Eigen::Index>(model.inputs),
                    static_cast<Eigen::Index>(h));
  const Eigen::Map<const Eigen::RowVectorXd> b1(model.b1.data(),
                                                static_cast<Eigen::Index>(h));
  const Eigen::Map<const Eigen::VectorXd> w2(model.w2.data(),
                                             static_cast<Eigen::Index>(h));
  RowMatrix hidden = view(x, n, x.cols()) * w1;
  hidden.rowwise() += b1;
  hidden = hidden.cwiseMax(0.0);
  const Eigen::VectorXd z = hidden * w2;
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double zi = z[static_cast<Eigen::Index>(i)] + model.b2;
    out[i] = model.task == Task::kClassification ? detail::probability(zi) : zi;
  }
  return out;
}

}  // namespace molfp::predictors
