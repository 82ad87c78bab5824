//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_DEM_H_
#define MOLFP_EVAL_DEM_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "molfp/eval/dataset.h"
#include "molfp/eval/split.h"
#include "molfp/numerics/tensor.h"
#include "molfp/predictors/mlp.h"

namespace molfp::eval {

using Matrix = numerics::Tensor<double>;

// Per-row features of a dataset, [rows, dims].
struct FeatureSet {
  std::string name;
  Matrix features;
  // Fit a per-column standardizer on each training split.
  bool standardize = false;
};

// kLinear is ridge regression for regression tasks and L2 logistic
// regression for classification.
enum class Predictor { kLinear, kMlp };

std::string_view to_string(Predictor predictor) noexcept;

const std::vector<double> &default_ladder();

struct DemOptions {
  std::vector<double> ladder = default_ladder();
  std::size_t trials = 20;
  std::uint64_t base_seed = 0;
  // Worker threads for independent cells.
  std::size_t jobs = 1;
  double lambda = 1.0;
  predictors::MlpConfig mlp;
};

// One (fraction, trial) cell. `value` is the metric averaged over the tasks
// that could be scored; it is empty when no task could (see `error`).
struct DemRecord {
  double fraction = 0.0;
  std::size_t trial = 0;
  std::optional<double> value;
  std::size_t tasks_scored = 0;
  // Tasks skipped because a split side held a single class.
  std::vector<std::string> dropped_tasks;
  std::string error;
};

struct FractionSummary {
  double fraction = 0.0;
  std::size_t trials = 0;
  double mean = 0.0;
  // Sample standard deviation; 0 for fewer than two trials.
  double stddev = 0.0;
};

struct DemReport {
  std::string dataset;
  std::string model;
  Metric metric = Metric::kRmse;
  // Sorted by (fraction, trial).
  std::vector<DemRecord> records;
  std::vector<FractionSummary> fractions;
  // Mean over fractions of the per-fraction trial means; empty if some
  // fraction has no scored trial.
  std::optional<double> dem;
};

// Per-fraction summaries and their mean, recomputed from records.
void aggregate(DemReport &report, const std::vector<double> &ladder);

// Runs every cell of the ladder x trials grid. Cell (i, t) splits with
// cell_seed(base_seed, ladder[i], t), stratified for classification; each
// task is fit on its labelled training rows and scored on its labelled test
// rows. Split or fit failures are recorded per cell.
DemReport dem(const Dataset &data, const FeatureSet &features,
              Predictor predictor, const DemOptions &options);

// Scores one split for every task; returns the cell record (fraction and
// trial left unset).
DemRecord evaluate_split(const Dataset &data, const FeatureSet &features,
                         Predictor predictor, const Split &split,
                         const DemOptions &options, std::uint64_t seed);

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_DEM_H_
