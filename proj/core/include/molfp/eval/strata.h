//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_STRATA_H_
#define MOLFP_EVAL_STRATA_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molfp/eval/dem.h"

namespace molfp::eval {

struct StrataOptions {
  std::size_t groups = 5;
  double fraction = 0.8;
  std::size_t trials = 20;
  std::uint64_t base_seed = 0;
  std::size_t jobs = 1;
  double lambda = 1.0;
  predictors::MlpConfig mlp;
};

struct StrataGroup {
  std::size_t index = 0;
  // SMILES character lengths covered, inclusive.
  std::size_t min_length = 0;
  std::size_t max_length = 0;
  std::size_t count = 0;
  // Length -> number of rows in this group.
  std::map<std::size_t, std::size_t> histogram;
  std::vector<DemRecord> records;
  std::size_t trials_scored = 0;
  std::optional<double> mean;
  double stddev = 0.0;
};

struct StrataReport {
  std::string dataset;
  std::string model;
  Metric metric = Metric::kRmse;
  std::vector<StrataGroup> groups;
};

// Orders rows by SMILES length (ties canonical), cuts them into `groups`
// equal-count groups and runs `trials` splits at `fraction` inside each
// group. Group g uses seeds cell_seed(base_seed, fraction, g * trials + t).
// Throws Error("eval.too_few_rows") when n < 10 * groups.
StrataReport strata_eval(const Dataset &data, const FeatureSet &features,
                         Predictor predictor, const StrataOptions &options);

// Group boundaries only: row indices of each group.
std::vector<std::vector<std::size_t>> length_groups(const Dataset &data,
                                                    std::size_t groups);

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_STRATA_H_
