//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "molfp/predictors/linear.h"
#include "molfp/predictors/mlp.h"
#include "molfp/predictors/standardize.h"
#include "molfp/random.h"

namespace molfp::predictors {
namespace {

using molfp::testing::logistic_gradient_norm;
using molfp::testing::ridge_by_descent;
using molfp::testing::ridge_objective;

Matrix random_matrix(std::size_t n, std::size_t d, Rng &rng) {
  Matrix x({ n, d });
  for (double &v: x.values())
    v = rng.normal();
  return x;
}

Matrix duplicated(const Matrix &x) {
  Matrix out({ 2 * x.rows(), x.cols() });
  for (std::size_t i = 0; i < 2 * x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out.at(i, j) = x.at(i % x.rows(), j);
  return out;
}

std::vector<double> duplicated(const std::vector<double> &y) {
  std::vector<double> out = y;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

TEST(StandardizerTest, ZeroMeanUnitVariance) {
  Matrix x({ 4, 3 }, { 1, 5, 2, 2, 5, 4, 3, 5, 6, 4, 5, 8 });
  const auto s = Standardizer::fit(x);
  const Matrix z = s.apply(x);
  for (std::size_t j = 0; j < 3; ++j) {
    double mean = 0.0, var = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
      mean += z.at(i, j) / 4;
    for (std::size_t i = 0; i < 4; ++i)
      var += (z.at(i, j) - mean) * (z.at(i, j) - mean) / 4;
    EXPECT_NEAR(mean, 0.0, 1e-12);
    EXPECT_NEAR(var, j == 1 ? 0.0 : 1.0, 1e-12);
  }
  EXPECT_EQ(s.scale[1], 1.0);
}

TEST(RidgeTest, InterpolatesIdentityDesign) {
  Matrix x({ 3, 3 }, { 1, 0, 0, 0, 1, 0, 0, 0, 1 });
  const std::vector<double> y { 1, 2, 3 };
  const auto model = ridge_fit(x, y, 0.0);
  const auto p = predict(model, x);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_NEAR(p[i], y[i], 1e-12);
}

TEST(RidgeTest, HeavyPenaltyPredictsMean) {
  Rng rng(1);
  const Matrix x = random_matrix(15, 4, rng);
  std::vector<double> y(15);
  for (double &v: y)
    v = rng.normal() + 3.0;
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / 15.0;
  for (double p: predict(ridge_fit(x, y, 1e9), x))
    EXPECT_NEAR(p, mean, 1e-6);
}

TEST(RidgeTest, MatchesDescentMinimizer) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed);
    const Matrix x = random_matrix(20, 5, rng);
    std::vector<double> y(20);
    for (double &v: y)
      v = rng.normal();
    for (double lambda: { 0.0, 0.5, 3.0 }) {
      const auto model = ridge_fit(x, y, lambda);
      std::vector<double> w;
      double b;
      ridge_by_descent(x, y, lambda, w, b);
      const double solved = ridge_objective(x, y, model.w, model.b, lambda);
      const double oracle = ridge_objective(x, y, w, b, lambda);
      EXPECT_LT(std::abs(solved - oracle), 1e-8) << seed << " " << lambda;
      for (std::size_t j = 0; j < 5; ++j)
        EXPECT_NEAR(model.w[j], w[j], 1e-6);
      EXPECT_NEAR(model.b, b, 1e-6);
    }
  }
}

TEST(RidgeTest, DualFormMatchesDescentWhenWide) {
  Rng rng(11);
  const Matrix x = random_matrix(6, 15, rng);
  std::vector<double> y(6);
  for (double &v: y)
    v = rng.normal();
  const auto model = ridge_fit(x, y, 2.0);
  std::vector<double> w;
  double b;
  ridge_by_descent(x, y, 2.0, w, b);
  EXPECT_LT(std::abs(ridge_objective(x, y, model.w, model.b, 2.0)
                     - ridge_objective(x, y, w, b, 2.0)),
            1e-8);
}

TEST(RidgeTest, LeastSquaresResidualIsOrthogonal) {
  Rng rng(3);
  const Matrix x = random_matrix(30, 6, rng);
  std::vector<double> y(30);
  for (double &v: y)
    v = rng.normal();
  const auto model = ridge_fit(x, y, 0.0);
  const auto p = predict(model, x);
  std::vector<double> xtr(6, 0.0);
  double rsum = 0.0;
  for (std::size_t i = 0; i < 30; ++i) {
    rsum += p[i] - y[i];
    for (std::size_t j = 0; j < 6; ++j)
      xtr[j] += x.at(i, j) * (p[i] - y[i]);
  }
  double norm = rsum * rsum;
  for (double v: xtr)
    norm += v * v;
  EXPECT_LT(std::sqrt(norm), 1e-6);
}

TEST(RidgeTest, DuplicatedRowsKeepPredictions) {
  Rng rng(4);
  const Matrix x = random_matrix(12, 4, rng);
  std::vector<double> y(12);
  for (double &v: y)
    v = rng.normal();
  // The summed squared loss doubles with every row duplicated, so the
  // penalty must double with it.
  for (double lambda: { 0.0, 1.0 }) {
    const auto a = predict(ridge_fit(x, y, lambda), x);
    const auto b = predict(ridge_fit(duplicated(x), duplicated(y), 2 * lambda), x);
    for (std::size_t i = 0; i < a.size(); ++i)
      EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(RidgeTest, RejectsBadInput) {
  Matrix x({ 2, 1 }, { 1.0, NAN });
  EXPECT_THROW(ridge_fit(x, std::vector<double> { 1, 2 }), Error);
  Matrix ok({ 2, 1 }, { 1.0, 2.0 });
  EXPECT_THROW(ridge_fit(ok, std::vector<double> { 1 }), Error);
  const auto model = ridge_fit(ok, std::vector<double> { 1, 2 });
  EXPECT_THROW(predict(model, Matrix({ 1, 2 })), Error);
}

TEST(PredictTest, ZeroModelsAreConstant) {
  const Matrix x({ 3, 2 }, { 1, 2, -3, 4, 5, -6 });
  for (double p: predict(RidgeModel { { 0, 0 }, 2.5, 1.0 }, x))
    EXPECT_EQ(p, 2.5);
  LogisticModel logistic;
  logistic.w = { 0, 0 };
  for (double p: predict(logistic, x))
    EXPECT_EQ(p, 0.5);
}

struct Classification {
  Matrix x;
  std::vector<double> y;
};

Classification noisy_classes(std::size_t n, std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  Classification c { random_matrix(n, d, rng), std::vector<double>(n) };
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.3;
    for (std::size_t j = 0; j < d; ++j)
      z += c.x.at(i, j) * (j % 2 ? -1.0 : 1.5);
    c.y[i] = rng.uniform() < 1.0 / (1.0 + std::exp(-z)) ? 1.0 : 0.0;
  }
  c.y[0] = 0.0;
  c.y[1] = 1.0;
  return c;
}

TEST(LogisticTest, SeparatesTwoPoints) {
  const Matrix x({ 2, 1 }, { -1.0, 1.0 });
  const std::vector<double> y { 0, 1 };
  const auto model = logistic_fit(x, y, { .lambda = 1e-3 });
  const auto p = predict(model, x);
  EXPECT_LT(p[0], 0.5);
  EXPECT_GT(p[1], 0.5);
}

TEST(LogisticTest, HeavyPenaltyPredictsPrior) {
  auto c = noisy_classes(40, 3, 2);
  const double prior = std::accumulate(c.y.begin(), c.y.end(), 0.0) / 40.0;
  const auto model = logistic_fit(c.x, c.y, { .lambda = 1e9 });
  for (double p: predict(model, c.x))
    EXPECT_NEAR(p, prior, 1e-6);
}

TEST(LogisticTest, ConvergesToStationaryPoint) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto c = noisy_classes(60, 5, seed);
    const auto model = logistic_fit(c.x, c.y, { .lambda = 1.0 });
    EXPECT_LT(model.gradient_norm, 1e-6);
    EXPECT_LT(logistic_gradient_norm(c.x, c.y, model.w, model.b, 1.0), 1e-6);
    EXPECT_LT(model.iterations, 5000u);
    // Central differences of the objective agree with a vanishing gradient.
    const double h = 1e-5;
    for (std::size_t j = 0; j <= 5; ++j) {
      auto w = model.w;
      double b = model.b;
      auto shifted = [&](double delta) {
        auto ww = w;
        double bb = b;
        (j < 5 ? ww[j] : bb) += delta;
        return logistic_objective(c.x, c.y, ww, bb, 1.0);
      };
      EXPECT_LT(std::abs((shifted(h) - shifted(-h)) / (2 * h)), 1e-6);
    }
  }
}

TEST(LogisticTest, BeatsRandomSearch) {
  auto c = noisy_classes(30, 4, 9);
  const auto model = logistic_fit(c.x, c.y, { .lambda = 1.0 });
  const double best = logistic_objective(c.x, c.y, model.w, model.b, 1.0);
  Rng rng(99);
  for (int draw = 0; draw < 1000; ++draw) {
    std::vector<double> w(4);
    for (double &v: w)
      v = 2.0 * rng.normal();
    const double b = 2.0 * rng.normal();
    EXPECT_LE(best, logistic_objective(c.x, c.y, w, b, 1.0));
  }
}

TEST(LogisticTest, ObjectiveNeverIncreases) {
  auto c = noisy_classes(50, 6, 5);
  const auto model = logistic_fit(c.x, c.y, { .lambda = 0.1 });
  ASSERT_GE(model.objective_trace.size(), 2u);
  for (std::size_t i = 1; i < model.objective_trace.size(); ++i)
    EXPECT_LE(model.objective_trace[i], model.objective_trace[i - 1]);
}

TEST(LogisticTest, DuplicatedRowsKeepPredictions) {
  auto c = noisy_classes(25, 3, 6);
  // Mean loss is unchanged by duplication while lambda/n halves, so lambda
  // doubles to keep the objective fixed.
  const auto a = predict(logistic_fit(c.x, c.y, { .lambda = 1.0 }), c.x);
  const auto b = predict(
      logistic_fit(duplicated(c.x), duplicated(c.y), { .lambda = 2.0 }), c.x);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_NEAR(a[i], b[i], 1e-6);
}

TEST(LogisticTest, RejectsBadLabels) {
  const Matrix x({ 3, 1 }, { 1, 2, 3 });
  EXPECT_THROW(logistic_fit(x, std::vector<double> { 1, 1, 1 }), Error);
  EXPECT_THROW(logistic_fit(x, std::vector<double> { 0, 1, 2 }), Error);
}

const Matrix kXor({ 4, 2 }, { 0, 0, 0, 1, 1, 0, 1, 1 });
const std::vector<double> kXorLabels { 0, 1, 1, 0 };

TEST(MlpTest, LearnsXorForMostSeeds) {
  int solved = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto model = mlp_fit(kXor, kXorLabels, Task::kClassification,
                               { .seed = seed });
    const auto p = predict(model, kXor);
    bool all = true;
    for (std::size_t i = 0; i < 4; ++i)
      all = all && ((p[i] > 0.5) == (kXorLabels[i] == 1.0));
    solved += all;
  }
  EXPECT_GE(solved, 8);
}

TEST(MlpTest, FitsConstantTarget) {
  Rng rng(2);
  const Matrix x = random_matrix(60, 5, rng);
  const std::vector<double> y(60, 3.7);
  // 200 single-batch epochs at lr 1e-3 leave ~0.5 of input-dependent output.
  const auto model = mlp_fit(x, y, Task::kRegression,
                             { .lr = 1e-2, .max_epochs = 3000, .patience = 3000,
                               .min_rows_for_validation = 100 });
  for (double p: predict(model, x))
    EXPECT_NEAR(p, 3.7, 1e-2);
}

TEST(MlpTest, DeterministicPerSeed) {
  Rng rng(3);
  const Matrix x = random_matrix(50, 4, rng);
  std::vector<double> y(50);
  for (std::size_t i = 0; i < 50; ++i)
    y[i] = x.at(i, 0) - 2 * x.at(i, 2);
  const auto a = predict(mlp_fit(x, y, Task::kRegression, { .seed = 4 }), x);
  const auto b = predict(mlp_fit(x, y, Task::kRegression, { .seed = 4 }), x);
  EXPECT_EQ(a, b);
  const auto c = predict(mlp_fit(x, y, Task::kRegression, { .seed = 5 }), x);
  EXPECT_NE(a, c);
}

TEST(MlpTest, ReproducesTrainingTargets) {
  Rng rng(8);
  const Matrix x = random_matrix(6, 3, rng);
  const std::vector<double> y { 1.0, -0.5, 2.0, 0.3, -1.2, 0.8 };
  const auto model = mlp_fit(x, y, Task::kRegression,
                             { .lr = 1e-2, .max_epochs = 3000, .patience = 3000 });
  const auto p = predict(model, x);
  for (std::size_t i = 0; i < y.size(); ++i)
    EXPECT_NEAR(p[i], y[i], 0.05);
}

TEST(MlpTest, DuplicatedRowsKeepPredictions) {
  Rng rng(6);
  const Matrix x = random_matrix(8, 3, rng);
  std::vector<double> y(8);
  for (std::size_t i = 0; i < 8; ++i)
    y[i] = x.at(i, 1) * x.at(i, 2);
  const auto a = predict(mlp_fit(x, y, Task::kRegression, { .seed = 1 }), x);
  const auto b = predict(
      mlp_fit(duplicated(x), duplicated(y), Task::kRegression, { .seed = 1 }), x);
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_NEAR(a[i], b[i], 1e-6);
}

TEST(MlpTest, Errors) {
  const Matrix one({ 1, 2 }, { 1, 2 });
  EXPECT_THROW(mlp_fit(one, std::vector<double> { 1 }, Task::kRegression), Error);
  EXPECT_THROW(mlp_fit(kXor, std::vector<double> { 1, 1, 1, 1 },
                       Task::kClassification),
               Error);
  const auto model = mlp_fit(kXor, kXorLabels, Task::kClassification);
  EXPECT_THROW(predict(model, Matrix({ 2, 3 })), Error);
  for (double p: predict(model, kXor)) {
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
  }
}

}  // namespace
}  // namespace molfp::predictors
