//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_EVAL_REPORT_H_
#define MOLFP_EVAL_REPORT_H_

#include <ostream>
#include <span>
#include <string>

#include "molfp/eval/dem.h"
#include "molfp/eval/strata.h"

namespace molfp::eval {

// Shortest round-trip decimal form; "nan"/"inf"/"-inf" for non-finite.
std::string format_number(double value);

// dataset,model,fraction,trial,task_avg_metric  (empty metric = missing cell)
void write_records(std::ostream &out, std::span<const DemReport> reports);

// dataset,model,dem,metric  (empty dem = aggregate failed)
void write_summary(std::ostream &out, std::span<const DemReport> reports);

// dataset,model,fraction,mean,std,trials
void write_plot(std::ostream &out, std::span<const DemReport> reports);

// dataset,model,group,min_length,max_length,count,mean_metric,std_metric,trials,metric
void write_strata(std::ostream &out, std::span<const StrataReport> reports);

// dataset,group,length,count
void write_length_histogram(std::ostream &out, const StrataReport &report);

}  // namespace molfp::eval

#endif  // MOLFP_EVAL_REPORT_H_
