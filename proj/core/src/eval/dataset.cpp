//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "molfp/error.h"

namespace molfp::eval {

void Dataset::validate() const {
  auto fail = [&](const std::string &message) {
    throw Error("eval.dataset", (name.empty() ? "dataset" : name) + ": " + message);
  };
  if (tasks() == 0)
    fail("no task columns");
  if (rows() == 0)
    fail("no rows");
  if (labels.size() != rows() * tasks() || present.size() != labels.size())
    fail("label table does not match rows x tasks");
  if ((task_type == Task::kRegression) != (metric == Metric::kRmse))
    fail(std::string(to_string(metric)) + " does not suit the task type");
  for (std::size_t r = 0; r < rows(); ++r) {
    bool any = false;
    for (std::size_t t = 0; t < tasks(); ++t) {
      if (!has_label(r, t))
        continue;
      any = true;
      const double y = label(r, t);
      if (!std::isfinite(y))
        fail("non-finite label in row " + std::to_string(r));
      if (task_type == Task::kClassification && y != 0.0 && y != 1.0)
        fail("classification label " + std::to_string(y) + " in row "
             + std::to_string(r) + " is not 0/1");
    }
    if (!any)
      fail("row " + std::to_string(r) + " has no label");
  }
}

std::vector<std::size_t> Dataset::canonical_order() const {
  std::vector<std::size_t> order(rows());
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return smiles[a] < smiles[b];
  });
  return order;
}

}  // namespace molfp::eval
