//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "molfp/error.h"

namespace molfp::eval {

namespace {

void check_lengths(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size())
    throw Error("eval.metric", "metric needs equal non-empty inputs, got "
                                   + std::to_string(a.size()) + " and "
                                   + std::to_string(b.size()));
}

// Positive count; throws unless labels are 0/1 (and, with `need_negative`,
// both classes occur).
std::size_t count_positives(std::span<const double> labels, bool need_negative) {
  std::size_t pos = 0;
  for (double y: labels) {
    if (y != 0.0 && y != 1.0)
      throw Error("eval.metric", "labels must be 0 or 1");
    pos += y == 1.0;
  }
  if (pos == 0 || (need_negative && pos == labels.size()))
    throw Error("eval.single_class", "metric needs both classes present");
  return pos;
}

// Indices ordered by score; NaN scores rejected.
std::vector<std::size_t> order_by_score(std::span<const double> scores,
                                        bool descending) {
  for (double s: scores)
    if (std::isnan(s))
      throw Error("eval.metric", "NaN score");
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return descending ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  return order;
}

}  // namespace

std::string_view to_string(Metric metric) noexcept {
  switch (metric) {
  case Metric::kRmse:
    return "RMSE";
  case Metric::kRocAuc:
    return "ROC-AUC";
  case Metric::kPrcAuc:
    return "PRC-AUC";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view text) {
  std::string key;
  for (char c: text)
    key.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(
                                       static_cast<unsigned char>(c))));
  if (key == "rmse")
    return Metric::kRmse;
  if (key == "roc-auc")
    return Metric::kRocAuc;
  if (key == "prc-auc")
    return Metric::kPrcAuc;
  return std::nullopt;
}

double rmse(std::span<const double> pred, std::span<const double> truth) {
  check_lengths(pred, truth);
  double total = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - truth[i];
    total += e * e;
  }
  return std::sqrt(total / static_cast<double>(pred.size()));
}

double roc_auc(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  const std::size_t pos = count_positives(labels, true);
  const std::size_t neg = labels.size() - pos;
  const auto order = order_by_score(scores, false);
  // Sum of 1-based midranks of the positives.
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]])
      ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]] == 1.0)
        rank_sum += midrank;
    i = j;
  }
  const double p = static_cast<double>(pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(neg));
}

double prc_auc(std::span<const double> scores, std::span<const double> labels) {
  check_lengths(scores, labels);
  const std::size_t pos = count_positives(labels, false);
  const auto order = order_by_score(scores, true);
  double area = 0.0;
  std::size_t tp = 0, seen = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    std::size_t block_pos = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      block_pos += labels[order[j]] == 1.0;
      ++j;
    }
    tp += block_pos;
    seen = j;
    if (block_pos > 0)
      area += static_cast<double>(block_pos) / static_cast<double>(pos)
              * static_cast<double>(tp) / static_cast<double>(seen);
    i = j;
  }
  return area;
}

double score(Metric metric, std::span<const double> pred,
             std::span<const double> truth) {
  switch (metric) {
  case Metric::kRmse:
    return rmse(pred, truth);
  case Metric::kRocAuc:
    return roc_auc(pred, truth);
  case Metric::kPrcAuc:
    return prc_auc(pred, truth);
  }
  throw Error("eval.metric", "unknown metric");
}

}  // namespace molfp::eval
