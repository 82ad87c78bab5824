//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_SPLIT_H_
#define MOLFP_EVAL_SPLIT_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "molfp/eval/dataset.h"

namespace molfp::eval {

// Row indices, each list in canonical order.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seed of trial `trial` at training fraction `fraction`: FNV-1a over the
// little-endian bytes of (base, IEEE-754 bits of fraction, trial).
std::uint64_t cell_seed(std::uint64_t base, double fraction,
                        std::uint64_t trial) noexcept;

// Random train/test partition with round(fraction * n) training rows.
// With `stratified`, rows are grouped by their first-task label (missing
// labels form their own group) and the training quota is shared among groups
// by largest remainder, so every group keeps its share within one row.
//
// Throws Error("eval.too_few_rows") if the training or test side would have
// fewer than 2 or 1 rows respectively, or if stratification leaves a class
// without a training row.
Split make_split(const Dataset &data, double fraction, bool stratified,
                 std::uint64_t seed);

// Same as above over a subset of rows (given in canonical order).
Split make_split(const Dataset &data, const std::vector<std::size_t> &rows,
                 double fraction, bool stratified, std::uint64_t seed);

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_SPLIT_H_
