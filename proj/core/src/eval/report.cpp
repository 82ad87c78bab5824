//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/report.h"

#include <charconv>
#include <cmath>

namespace molfp::eval {

std::string format_number(double value) {
  if (std::isnan(value))
    return "nan";
  if (std::isinf(value))
    return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, result.ptr);
}

namespace {

std::string optional_number(const std::optional<double> &value) {
  return value ? format_number(*value) : std::string();
}

}  // namespace

void write_records(std::ostream &out, std::span<const DemReport> reports) {
  out << "dataset,model,fraction,trial,task_avg_metric\n";
  for (const auto &report: reports)
    for (const auto &r: report.records)
      out << report.dataset << ',' << report.model << ','
          << format_number(r.fraction) << ',' << r.trial << ','
          << optional_number(r.value) << '\n';
}

void write_summary(std::ostream &out, std::span<const DemReport> reports) {
  out << "dataset,model,dem,metric\n";
  for (const auto &report: reports)
    out << report.dataset << ',' << report.model << ','
        << optional_number(report.dem) << ',' << to_string(report.metric) << '\n';
}

void write_plot(std::ostream &out, std::span<const DemReport> reports) {
  out << "dataset,model,fraction,mean,std,trials\n";
  for (const auto &report: reports)
    for (const auto &f: report.fractions)
      out << report.dataset << ',' << report.model << ','
          << format_number(f.fraction) << ','
          << (f.trials ? format_number(f.mean) : std::string()) << ','
          << (f.trials ? format_number(f.stddev) : std::string()) << ','
          << f.trials << '\n';
}

void write_strata(std::ostream &out, std::span<const StrataReport> reports) {
  out << "dataset,model,group,min_length,max_length,count,mean_metric,"
         "std_metric,trials,metric\n";
  for (const auto &report: reports)
    for (const auto &g: report.groups)
      out << report.dataset << ',' << report.model << ',' << g.index << ','
          << g.min_length << ',' << g.max_length << ',' << g.count << ','
          << optional_number(g.mean) << ','
          << (g.mean ? format_number(g.stddev) : std::string()) << ','
          << g.trials_scored << ',' << to_string(report.metric) << '\n';
}

void write_length_histogram(std::ostream &out, const StrataReport &report) {
  out << "dataset,group,length,count\n";
  for (const auto &g: report.groups)
    for (const auto &[length, count]: g.histogram)
      out << report.dataset << ',' << g.index << ',' << length << ',' << count
          << '\n';
}

}  // namespace molfp::eval
