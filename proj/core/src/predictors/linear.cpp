//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/predictors/linear.h"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/QR>

#include "common.h"

namespace molfp::predictors {

namespace {

using RowMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMatrix>;

ConstMap as_eigen(const Matrix &x) {
  return ConstMap(x.data(), static_cast<Eigen::Index>(x.rows()),
                  static_cast<Eigen::Index>(x.cols()));
}

Eigen::VectorXd margins(const Matrix &x, std::span<const double> w, double b) {
  const Eigen::Map<const Eigen::VectorXd> wv(w.data(),
                                             static_cast<Eigen::Index>(w.size()));
  Eigen::VectorXd z = as_eigen(x) * wv;
  z.array() += b;
  return z;
}

}  // namespace

RidgeModel ridge_fit(const Matrix &x, std::span<const double> y,
                     double lambda) {
  detail::check_training_data(x, y);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw Error("predictors.config", "lambda must be finite and >= 0");
  const auto n = static_cast<Eigen::Index>(x.rows());
  const auto d = static_cast<Eigen::Index>(x.cols());
  if (n == 0)
    throw Error("predictors.too_few_rows", "ridge needs at least one row");

  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), n);
  const Eigen::RowVectorXd x_mean = as_eigen(x).colwise().mean();
  const double y_mean = yv.mean();
  const RowMatrix xc = as_eigen(x).rowwise() - x_mean;
  const Eigen::VectorXd yc = yv.array() - y_mean;

  Eigen::VectorXd w;
  if (lambda > 0.0 && n < d) {
    // w = Xc^T (Xc Xc^T + lambda I)^-1 yc
    Eigen::MatrixXd gram = xc * xc.transpose();
    gram.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    w = xc.transpose() * llt.solve(yc);
  } else if (lambda > 0.0) {
    Eigen::MatrixXd gram = xc.transpose() * xc;
    gram.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    w = llt.solve(xc.transpose() * yc);
  } else {
    // Minimum-norm least squares; the unregularized Gram matrix may be
    // singular.
    w = Eigen::CompleteOrthogonalDecomposition<RowMatrix>(xc).solve(yc);
  }

  RidgeModel model;
  model.w.assign(w.data(), w.data() + w.size());
  model.b = y_mean - x_mean.dot(w);
  model.lambda = lambda;
  for (double v: model.w)
    if (!std::isfinite(v))
      throw Error("predictors.non_finite", "ridge solution is not finite");
  return model;
}

double logistic_objective(const Matrix &x, std::span<const double> y,
                          std::span<const double> w, double b, double lambda) {
  const Eigen::VectorXd z = margins(x, w, b);
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    loss += detail::softplus(z[i]) - y[i] * z[i];
  double norm2 = 0.0;
  for (double v: w)
    norm2 += v * v;
  const double n = static_cast<double>(y.size());
  return loss / n + lambda * norm2 / n;
}

LogisticModel logistic_fit(const Matrix &x, std::span<const double> y,
                           const LogisticOptions &options) {
  detail::check_training_data(x, y);
  detail::check_binary(y);
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const double lambda = options.lambda;
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto xe = as_eigen(x);

  // theta = (w, b); gradient evaluated alongside the objective.
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d + 1));
  auto evaluate = [&](const Eigen::VectorXd &t, Eigen::VectorXd *grad) {
    const auto w = t.head(static_cast<Eigen::Index>(d));
    const double b = t[static_cast<Eigen::Index>(d)];
    Eigen::VectorXd z = xe * w;
    z.array() += b;
    double loss = 0.0;
    Eigen::VectorXd r(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      loss += detail::softplus(z[i]) - y[i] * z[i];
      r[i] = detail::sigmoid(z[i]) - y[i];
    }
    if (grad) {
      grad->resize(t.size());
      grad->head(static_cast<Eigen::Index>(d)) =
          inv_n * (xe.transpose() * r) + (2.0 * lambda * inv_n) * w;
      (*grad)[static_cast<Eigen::Index>(d)] = inv_n * r.sum();
    }
    return loss * inv_n + lambda * inv_n * w.squaredNorm();
  };

  // Jacobi preconditioner from the Hessian diagonal bound
  // (1/4n) sum_i x_ij^2 + 2 lambda / n, and 1/4 for the intercept.
  Eigen::VectorXd precond(static_cast<Eigen::Index>(d + 1));
  for (std::size_t j = 0; j < d; ++j) {
    const double h = 0.25 * inv_n * xe.col(static_cast<Eigen::Index>(j)).squaredNorm()
                     + 2.0 * lambda * inv_n;
    precond[static_cast<Eigen::Index>(j)] = h > 0.0 ? 1.0 / h : 1.0;
  }
  precond[static_cast<Eigen::Index>(d)] = 4.0;

  LogisticModel model;
  model.lambda = lambda;
  Eigen::VectorXd grad;
  double f = evaluate(theta, &grad);
  model.objective_trace.push_back(f);
  Eigen::VectorXd prev_theta, prev_grad;
  double step = 1.0;
  constexpr double kArmijo = 1e-4;
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    if (grad.norm() < options.tolerance)
      break;
    const Eigen::VectorXd direction = -precond.cwiseProduct(grad);
    const double slope = grad.dot(direction);
    if (it > 0) {
      // Barzilai-Borwein step in the preconditioned metric.
      const Eigen::VectorXd s = theta - prev_theta;
      const double sy = s.dot(grad - prev_grad);
      if (sy > 0.0)
        step = s.cwiseQuotient(precond).dot(s) / sy;
    }
    bool accepted = false;
    Eigen::VectorXd candidate;
    for (int halving = 0; halving < 60; ++halving) {
      candidate = theta + step * direction;
      if (evaluate(candidate, nullptr) <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted)
      break;
    prev_theta = std::move(theta);
    prev_grad = grad;
    theta = std::move(candidate);
    f = evaluate(theta, &grad);
    model.objective_trace.push_back(f);
  }

  model.iterations = it;
  model.gradient_norm = grad.norm();
  model.w.assign(theta.data(), theta.data() + d);
  model.b = theta[static_cast<Eigen::Index>(d)];
  return model;
}

std::vector<double> predict(const RidgeModel &model, const Matrix &x) {
  detail::check_width(x, model.w.size());
  const Eigen::VectorXd z = margins(x, model.w, model.b);
  return { z.data(), z.data() + z.size() };
}

std::vector<double> predict(const LogisticModel &model, const Matrix &x) {
  detail::check_width(x, model.w.size());
  const Eigen::VectorXd z = margins(x, model.w, model.b);
  std::vector<double> p(static_cast<std::size_t>(z.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = detail::probability(z[static_cast<Eigen::Index>(i)]);
  return p;
}

}  // namespace molfp::predictors
