//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TOOLS_CLI_DATASET_CSV_H_
#define MOLFP_TOOLS_CLI_DATASET_CSV_H_

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "molfp/eval/dataset.h"

namespace molfp::cli {

// RFC 4180 records: comma separated, double-quoted fields may contain commas,
// line breaks and doubled quotes; LF and CRLF line ends. Throws
// Error("cli.csv") for an unterminated quote.
std::vector<std::vector<std::string>> read_csv(std::istream &in);

struct DatasetCsvOptions {
  std::string name;
  eval::Task task_type = eval::Task::kRegression;
  // Defaults to RMSE for regression and ROC-AUC for classification.
  std::optional<eval::Metric> metric;
  // Label columns; empty selects every column except the SMILES column.
  std::vector<std::string> tasks;
  std::string smiles_column = "smiles";
};

// Loads a labelled dataset. SMILES cells are trimmed; rows whose SMILES do
// not parse, or that have no label in any selected task, are dropped and
// counted in Dataset::dropped. Empty label cells are missing labels.
//
// Error kinds: cli.csv_no_smiles (no SMILES column), cli.csv_column (unknown
// task column), cli.csv (ragged row, non-numeric label), cli.csv_empty (no
// usable rows), io.open.
eval::Dataset load_dataset_csv(std::istream &in, const DatasetCsvOptions &options);
eval::Dataset load_dataset_csv(const std::filesystem::path &path,
                               DatasetCsvOptions options);

// Quotes a field when it contains a comma, quote or line break.
std::string csv_field(const std::string &value);

}  // namespace molfp::cli

#endif  // MOLFP_TOOLS_CLI_DATASET_CSV_H_
