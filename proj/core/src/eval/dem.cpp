//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/dem.h"

#include <cmath>

#include "molfp/error.h"
#include "molfp/hash.h"
#include "molfp/predictors/linear.h"
#include "molfp/predictors/standardize.h"
#include "parallel.h"

namespace molfp::eval {

namespace {

Matrix gather_rows(const Matrix &x, const std::vector<std::size_t> &rows) {
  Matrix out({ rows.size(), x.cols() });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto src = x.row(rows[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

std::vector<double> fit_predict(Predictor predictor, Task task,
                                const Matrix &x_train,
                                const std::vector<double> &y_train,
                                const Matrix &x_test, const DemOptions &options,
                                std::uint64_t seed) {
  if (predictor == Predictor::kMlp) {
    predictors::MlpConfig config = options.mlp;
    config.seed = seed;
    return predictors::predict(predictors::mlp_fit(x_train, y_train, task, config),
                               x_test);
  }
  if (task == Task::kRegression)
    return predictors::predict(predictors::ridge_fit(x_train, y_train, options.lambda),
                               x_test);
  return predictors::predict(
      predictors::logistic_fit(x_train, y_train, { .lambda = options.lambda }),
      x_test);
}

bool single_class(const std::vector<double> &y) {
  for (double v: y)
    if (v != y.front())
      return false;
  return true;
}

}  // namespace

std::string_view to_string(Predictor predictor) noexcept {
  return predictor == Predictor::kLinear ? "linear" : "mlp";
}

const std::vector<double> &default_ladder() {
  static const std::vector<double> ladder { 0.0125, 0.025, 0.05, 0.1,
                                            0.2,    0.4,   0.8 };
  return ladder;
}

DemRecord evaluate_split(const Dataset &data, const FeatureSet &features,
                         Predictor predictor, const Split &split,
                         const DemOptions &options, std::uint64_t seed) {
  if (features.features.rows() != data.rows())
    throw Error("eval.features",
                features.name + " has " + std::to_string(features.features.rows())
                    + " rows for " + std::to_string(data.rows()) + " molecules");
  DemRecord record;
  double total = 0.0;
  for (std::size_t t = 0; t < data.tasks(); ++t) {
    std::vector<std::size_t> train, test;
    for (std::size_t r: split.train)
      if (data.has_label(r, t))
        train.push_back(r);
    for (std::size_t r: split.test)
      if (data.has_label(r, t))
        test.push_back(r);
    std::vector<double> y_train, y_test;
    for (std::size_t r: train)
      y_train.push_back(data.label(r, t));
    for (std::size_t r: test)
      y_test.push_back(data.label(r, t));
    if (train.size() < 2 || test.empty()
        || (data.task_type == Task::kClassification
            && (single_class(y_train) || single_class(y_test)))) {
      record.dropped_tasks.push_back(data.task_names[t]);
      continue;
    }

    Matrix x_train = gather_rows(features.features, train);
    Matrix x_test = gather_rows(features.features, test);
    if (features.standardize) {
      const auto scaler = predictors::Standardizer::fit(x_train);
      x_train = scaler.apply(x_train);
      x_test = scaler.apply(x_test);
    }
    const auto pred = fit_predict(predictor, data.task_type, x_train, y_train,
                                  x_test, options, Fnv1a().u64(seed).u64(t).value());
    total += score(data.metric, pred, y_test);
    ++record.tasks_scored;
  }
  if (record.tasks_scored > 0)
    record.value = total / static_cast<double>(record.tasks_scored);
  else
    record.error = "no task could be scored";
  return record;
}

void aggregate(DemReport &report, const std::vector<double> &ladder) {
  report.fractions.clear();
  bool complete = !ladder.empty();
  double sum_of_means = 0.0;
  for (double fraction: ladder) {
    FractionSummary s;
    s.fraction = fraction;
    double total = 0.0;
    std::vector<double> values;
    for (const auto &r: report.records)
      if (r.fraction == fraction && r.value) {
        values.push_back(*r.value);
        total += *r.value;
      }
    s.trials = values.size();
    if (s.trials > 0) {
      s.mean = total / static_cast<double>(s.trials);
      if (s.trials > 1) {
        double ss = 0.0;
        for (double v: values)
          ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / static_cast<double>(s.trials - 1));
      }
      sum_of_means += s.mean;
    } else {
      complete = false;
    }
    report.fractions.push_back(s);
  }
  report.dem = complete ? std::optional(sum_of_means / static_cast<double>(ladder.size()))
                        : std::nullopt;
}

DemReport dem(const Dataset &data, const FeatureSet &features,
              Predictor predictor, const DemOptions &options) {
  data.validate();
  DemReport report;
  report.dataset = data.name;
  report.model = features.name + "+" + std::string(to_string(predictor));
  report.metric = data.metric;

  const std::vector<std::size_t> canonical = data.canonical_order();
  const bool stratified = data.task_type == Task::kClassification;
  const std::size_t cells = options.ladder.size() * options.trials;
  report.records.resize(cells);
  detail::parallel_for(cells, options.jobs, [&](std::size_t cell) {
    const double fraction = options.ladder[cell / options.trials];
    const std::size_t trial = cell % options.trials;
    const std::uint64_t seed = cell_seed(options.base_seed, fraction, trial);
    DemRecord record;
    try {
      const Split split = make_split(data, canonical, fraction, stratified, seed);
      record = evaluate_split(data, features, predictor, split, options, seed);
    } catch (const Error &e) {
      record = DemRecord {};
      record.error = e.kind() + ": " + e.what();
    }
    record.fraction = fraction;
    record.trial = trial;
    report.records[cell] = std::move(record);
  });
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const DemRecord &a, const DemRecord &b) {
                     return a.fraction != b.fraction ? a.fraction < b.fraction
                                                     : a.trial < b.trial;
                   });
  aggregate(report, options.ladder);
  return report;
}

}  // namespace molfp::eval
