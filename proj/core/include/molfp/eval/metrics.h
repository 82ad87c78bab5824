//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_METRICS_H_
#define MOLFP_EVAL_METRICS_H_

#include <optional>
#include <span>
#include <string_view>

namespace molfp::eval {

enum class Metric { kRmse, kRocAuc, kPrcAuc };

std::string_view to_string(Metric metric) noexcept;
// Accepts "rmse", "roc-auc"/"roc_auc", "prc-auc"/"prc_auc" in any case.
std::optional<Metric> parse_metric(std::string_view text);

// Lower is better for RMSE only.
constexpr bool higher_is_better(Metric metric) noexcept {
  return metric != Metric::kRmse;
}

// sqrt(mean (pred - truth)^2). Throws Error("eval.metric") on empty or
// mismatched input.
double rmse(std::span<const double> pred, std::span<const double> truth);

// Mann-Whitney statistic via midranks: P(s+ > s-) + P(s+ == s-) / 2.
// Labels are 0/1; throws Error("eval.single_class") unless both occur.
double roc_auc(std::span<const double> scores, std::span<const double> labels);

// Average precision: walking score blocks in descending order (tied scores
// form one block), sum of (recall gain) * (precision after the block).
// Throws Error("eval.single_class") without positives.
double prc_auc(std::span<const double> scores, std::span<const double> labels);

double score(Metric metric, std::span<const double> pred,
             std::span<const double> truth);

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_METRICS_H_
