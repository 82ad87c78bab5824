//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/strata.h"

#include <algorithm>
#include <cmath>

#include "molfp/error.h"
#include "parallel.h"

namespace molfp::eval {

std::vector<std::vector<std::size_t>> length_groups(const Dataset &data,
                                                    std::size_t groups) {
  if (groups == 0)
    throw Error("eval.config", "number of groups must be positive");
  std::vector<std::size_t> order = data.canonical_order();
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return data.smiles[a].size() < data.smiles[b].size();
  });
  const std::size_t n = order.size();
  std::vector<std::vector<std::size_t>> out(groups);
  for (std::size_t g = 0; g < groups; ++g)
    out[g].assign(order.begin() + static_cast<std::ptrdiff_t>(g * n / groups),
                  order.begin() + static_cast<std::ptrdiff_t>((g + 1) * n / groups));
  return out;
}

StrataReport strata_eval(const Dataset &data, const FeatureSet &features,
                         Predictor predictor, const StrataOptions &options) {
  data.validate();
  const std::size_t minimum = 10 * options.groups;
  if (data.rows() < minimum)
    throw Error("eval.too_few_rows",
                std::to_string(options.groups) + " groups need at least "
                    + std::to_string(minimum) + " rows, dataset has "
                    + std::to_string(data.rows()));

  StrataReport report;
  report.dataset = data.name;
  report.model = features.name + "+" + std::string(to_string(predictor));
  report.metric = data.metric;

  // Canonical position of every row, to keep each group's rows in that order.
  const auto canonical = data.canonical_order();
  std::vector<std::size_t> position(data.rows());
  for (std::size_t p = 0; p < canonical.size(); ++p)
    position[canonical[p]] = p;

  auto groups = length_groups(data, options.groups);
  report.groups.resize(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    auto &rows = groups[g];
    auto &group = report.groups[g];
    group.index = g;
    group.count = rows.size();
    for (std::size_t r: rows)
      ++group.histogram[data.smiles[r].size()];
    group.min_length = group.histogram.begin()->first;
    group.max_length = group.histogram.rbegin()->first;
    std::sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
      return position[a] < position[b];
    });
    group.records.resize(options.trials);
  }

  DemOptions fit_options;
  fit_options.lambda = options.lambda;
  fit_options.mlp = options.mlp;
  const bool stratified = data.task_type == Task::kClassification;
  detail::parallel_for(groups.size() * options.trials, options.jobs,
                       [&](std::size_t cell) {
    const std::size_t g = cell / options.trials;
    const std::size_t trial = cell % options.trials;
    const std::uint64_t seed = cell_seed(options.base_seed, options.fraction, cell);
    DemRecord record;
    try {
      const Split split = make_split(data, groups[g], options.fraction, stratified, seed);
      record = evaluate_split(data, features, predictor, split, fit_options, seed);
    } catch (const Error &e) {
      record = DemRecord {};
      record.error = e.kind() + ": " + e.what();
    }
    record.fraction = options.fraction;
    record.trial = trial;
    report.groups[g].records[trial] = std::move(record);
  });

  for (auto &group: report.groups) {
    std::vector<double> values;
    for (const auto &r: group.records)
      if (r.value)
        values.push_back(*r.value);
    group.trials_scored = values.size();
    if (values.empty())
      continue;
    double total = 0.0;
    for (double v: values)
      total += v;
    const double mean = total / static_cast<double>(values.size());
    group.mean = mean;
    if (values.size() > 1) {
      double ss = 0.0;
      for (double v: values)
        ss += (v - mean) * (v - mean);
      group.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
  }
  return report;
}

}  // namespace molfp::eval
