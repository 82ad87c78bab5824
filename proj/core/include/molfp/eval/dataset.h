//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_DATASET_H_
#define MOLFP_EVAL_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "molfp/eval/metrics.h"
#include "molfp/predictors/mlp.h"

namespace molfp::eval {

using predictors::Task;

// Molecules with one or more label columns. Labels are row-major
// [rows, tasks]; `present` marks which entries are observed.
struct Dataset {
  std::string name;
  std::vector<std::string> smiles;
  std::vector<std::string> task_names;
  std::vector<double> labels;
  std::vector<std::uint8_t> present;
  Task task_type = Task::kRegression;
  Metric metric = Metric::kRmse;
  // Input rows discarded while loading (unparseable SMILES).
  std::size_t dropped = 0;

  std::size_t rows() const noexcept { return smiles.size(); }
  std::size_t tasks() const noexcept { return task_names.size(); }
  double label(std::size_t row, std::size_t task) const {
    return labels[row * tasks() + task];
  }
  bool has_label(std::size_t row, std::size_t task) const {
    return present[row * tasks() + task] != 0;
  }

  // Throws Error("eval.dataset") unless there is at least one task, every row
  // has a label, sizes agree, the metric suits the task type and
  // classification labels are 0/1.
  void validate() const;

  // Row indices sorted by SMILES, ties by index. Splits are drawn over this
  // order, which makes them independent of the input row order.
  std::vector<std::size_t> canonical_order() const;
};

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_DATASET_H_
