//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TOOLS_CLI_COMMANDS_H_
#define MOLFP_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"
#include "molfp/eval/dataset.h"
#include "molfp/eval/dem.h"

namespace molfp::cli {

// Progress and note lines go to `log` unless the config sets quiet. Every
// command validates its paths before starting work and throws molfp::Error on
// failure.

// Trains on `corpus`, writing the checkpoint after every epoch and
// <checkpoint>.stats.csv (epoch,step,loss,perplexity,skipped).
void cmd_pretrain(const RunConfig &config, std::ostream &log);

// One row per non-blank input line: the SMILES followed by the fingerprint,
// or by "#error:<kind>" when the line cannot be fingerprinted.
void cmd_embed(const RunConfig &config, std::ostream &log);

// records.csv, summary.csv and plot.csv in output_dir.
void cmd_bench(const RunConfig &config, std::ostream &log);

// strata.csv and strata_lengths.csv in output_dir.
void cmd_strata(const RunConfig &config, std::ostream &log);

// smiles, label columns, pc1..pck.
void cmd_project(const RunConfig &config, std::ostream &log);

// Dataset described by the config (dataset path and task keys).
eval::Dataset load_configured_dataset(const RunConfig &config);

// Features of `smiles` for one fingerprint kind (st, ecfp or random).
eval::FeatureSet featurize(const RunConfig &config, const std::string &kind,
                           const std::vector<std::string> &smiles);

}  // namespace molfp::cli

#endif  // MOLFP_TOOLS_CLI_COMMANDS_H_
