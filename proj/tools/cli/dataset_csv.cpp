//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/dataset_csv.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>

#include "molfp/error.h"
#include "molfp/smiles/parser.h"

namespace molfp::cli {

namespace {

std::string trim(const std::string &s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    return {};
  return s.substr(first, s.find_last_not_of(" \t\r\n") - first + 1);
}

}  // namespace

std::vector<std::vector<std::string>> read_csv(std::istream &in) {
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A line holding nothing is skipped rather than read as one empty field.
    if (!(record.size() == 1 && record[0].empty()))
      records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        line += c == '\n';
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
    case '"':
      if (!field_started && field.empty())
        quoted = true;
      else
        field.push_back(c);
      field_started = true;
      break;
    case ',':
      end_field();
      break;
    case '\r':
      if (i + 1 < text.size() && text[i + 1] == '\n')
        break;
      [[fallthrough]];
    case '\n':
      end_record();
      ++line;
      break;
    default:
      field.push_back(c);
      field_started = true;
    }
  }
  if (quoted)
    throw Error("cli.csv", "unterminated quoted field at line " + std::to_string(line));
  if (field_started || !field.empty() || !record.empty())
    end_record();
  return records;
}

eval::Dataset load_dataset_csv(std::istream &in, const DatasetCsvOptions &options) {
  const auto records = read_csv(in);
  if (records.empty())
    throw Error("cli.csv_empty", "CSV has no header");
  const auto &header = records.front();
  auto column = [&](const std::string &name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (trim(header[i]) == name)
        return i;
    return std::nullopt;
  };
  const auto smiles_col = column(options.smiles_column);
  if (!smiles_col)
    throw Error("cli.csv_no_smiles",
                "no column named '" + options.smiles_column + "'");

  eval::Dataset data;
  data.name = options.name;
  data.task_type = options.task_type;
  data.metric = options.metric.value_or(options.task_type == eval::Task::kRegression
                                            ? eval::Metric::kRmse
                                            : eval::Metric::kRocAuc);
  std::vector<std::size_t> task_cols;
  if (options.tasks.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (i != *smiles_col) {
        task_cols.push_back(i);
        data.task_names.push_back(trim(header[i]));
      }
  } else {
    for (const auto &name: options.tasks) {
      const auto col = column(name);
      if (!col)
        throw Error("cli.csv_column", "no task column named '" + name + "'");
      task_cols.push_back(*col);
      data.task_names.push_back(name);
    }
  }
  if (task_cols.empty())
    throw Error("cli.csv_column", "CSV has no task columns");

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto &row = records[r];
    if (row.size() != header.size())
      throw Error("cli.csv", "record " + std::to_string(r + 1) + " has "
                                 + std::to_string(row.size()) + " fields, header has "
                                 + std::to_string(header.size()));
    const std::string smiles = trim(row[*smiles_col]);
    try {
      smiles::parse(smiles);
    } catch (const Error &) {
      ++data.dropped;
      continue;
    }
    std::vector<double> labels;
    std::vector<std::uint8_t> present;
    for (std::size_t col: task_cols) {
      const std::string cell = trim(row[col]);
      if (cell.empty()) {
        labels.push_back(0.0);
        present.push_back(0);
        continue;
      }
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(cell, &used);
      } catch (const std::exception &) {
        used = 0;
      }
      if (used != cell.size() || !std::isfinite(value))
        throw Error("cli.csv", "record " + std::to_string(r + 1) + ": label '" + cell
                                   + "' in column '" + trim(header[col])
                                   + "' is not a number"
                                   + (options.tasks.empty()
                                          ? " (select label columns with --tasks)"
                                          : ""));
      labels.push_back(value);
      present.push_back(1);
    }
    if (std::none_of(present.begin(), present.end(), [](auto p) { return p != 0; })) {
      ++data.dropped;
      continue;
    }
    data.smiles.push_back(smiles);
    data.labels.insert(data.labels.end(), labels.begin(), labels.end());
    data.present.insert(data.present.end(), present.begin(), present.end());
  }
  if (data.rows() == 0)
    throw Error("cli.csv_empty", "no usable rows (" + std::to_string(data.dropped)
                                     + " dropped)");
  data.validate();
  return data;
}

eval::Dataset load_dataset_csv(const std::filesystem::path &path,
                               DatasetCsvOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("io.open", "cannot read " + path.string());
  if (options.name.empty())
    options.name = path.stem().string();
  return load_dataset_csv(in, options);
}

std::string csv_field(const std::string &value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos)
    return value;
  std::string out = "\"";
  for (char c: value) {
    if (c == '"')
      out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace molfp::cli
