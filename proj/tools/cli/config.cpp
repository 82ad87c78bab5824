//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "molfp/error.h"

namespace molfp::cli {

namespace {

using enum KeyType;

const std::vector<KeySpec> kKeys {
  { "seed", kInt, "0", "Seed for model initialisation, training, splits and projections" },
  { "jobs", kInt, "1", "Worker threads for evaluation cells" },
  { "quiet", kBool, "false", "Suppress progress and note lines" },

  { "corpus", kPath, "", "pretrain: SMILES corpus, one molecule per line" },
  { "checkpoint", kPath, "", "Checkpoint stem (<stem>.json + <stem>.bin)" },
  { "input", kPath, "", "embed: SMILES file to fingerprint" },
  { "dataset", kPath, "", "bench/strata/project: CSV with a smiles column" },
  { "output", kPath, "", "embed/project: output table" },
  { "output_dir", kPath, ".", "bench/strata: directory for report files" },

  { "n_layers", kInt, "4", "Encoder and decoder layers" },
  { "n_heads", kInt, "4", "Attention heads" },
  { "d_model", kInt, "256", "Model width; fingerprints have 4*d_model entries" },
  { "d_ff", kInt, "0", "Feed-forward width (0 = 4*d_model)" },
  { "max_seq_len", kInt, "256", "Longest token sequence including BOS/EOS" },
  { "dropout", kReal, "0.1", "Dropout rate during pre-training" },

  { "epochs", kInt, "1", "pretrain: passes over the corpus" },
  { "batch_size", kInt, "64", "pretrain: molecules per step" },
  { "lr", kReal, "1e-4", "pretrain: Adam learning rate" },
  { "enumerate", kBool, "true", "pretrain: random SMILES for every use" },
  { "corpus_limit", kInt, "0", "pretrain: read at most this many molecules (0 = all)" },

  { "kind", kText, "st", "embed/project fingerprint: st, ecfp or random" },
  { "models", kList, "st,ecfp", "bench/strata fingerprints (st, ecfp, random)" },
  { "predictor", kList, "linear", "bench/strata predictors (linear, mlp)" },
  { "ladder", kList, "0.0125,0.025,0.05,0.1,0.2,0.4,0.8", "bench: training fractions" },
  { "trials", kInt, "20", "bench/strata: splits per fraction or group" },
  { "lambda", kReal, "1.0", "Ridge / logistic L2 strength" },

  { "task_type", kText, "", "Dataset task type: regression or classification" },
  { "metric", kText, "", "rmse, roc-auc or prc-auc (default rmse / roc-auc by task type)" },
  { "tasks", kList, "", "Label columns to use (default: every column but smiles)" },
  { "smiles_column", kText, "smiles", "Name of the SMILES column" },
  { "dataset_name", kText, "", "Name used in reports (default: file stem)" },

  { "ecfp_diameter", kInt, "4", "ECFP diameter" },
  { "ecfp_bits", kInt, "1024", "ECFP length in bits" },
  { "random_dims", kInt, "1024", "Random-projection fingerprint length" },
  { "st_batch", kInt, "32", "Molecules per encoder batch when fingerprinting" },

  { "mlp_hidden", kInt, "100", "MLP hidden units" },
  { "mlp_epochs", kInt, "200", "MLP maximum epochs" },
  { "mlp_lr", kReal, "1e-3", "MLP Adam learning rate" },
  { "mlp_alpha", kReal, "1e-4", "MLP L2 penalty" },
  { "mlp_batch", kInt, "200", "MLP mini-batch size" },
  { "mlp_patience", kInt, "10", "MLP early-stopping patience in epochs" },

  { "groups", kInt, "5", "strata: length groups" },
  { "strata_fraction", kReal, "0.8", "strata: training fraction inside each group" },

  { "k", kInt, "2", "project: principal components" },
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

bool parse_int(const std::string &s, std::int64_t &out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

bool parse_real(const std::string &s, double &out) {
  if (s.empty())
    return false;
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception &) {
    return false;
  }
  return used == s.size();
}

bool parse_bool(const std::string &s, bool &out) {
  std::string v;
  for (char c: s)
    v.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (v == "true" || v == "1" || v == "yes" || v == "on")
    return out = true, true;
  if (v == "false" || v == "0" || v == "no" || v == "off")
    return out = false, true;
  return false;
}

std::vector<std::string> split_list(const std::string &s) {
  std::vector<std::string> items;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (auto t = trim(item); !t.empty())
      items.push_back(std::move(t));
  return items;
}

}  // namespace

std::span<const KeySpec> config_keys() { return kKeys; }

std::string flag_name(std::string_view key) {
  std::string flag = "--";
  for (char c: key)
    flag.push_back(c == '_' ? '-' : c);
  return flag;
}

RunConfig::RunConfig() {
  for (const auto &k: kKeys)
    values_[k.name] = k.default_value;
}

const KeySpec &RunConfig::spec(const std::string &key) const {
  const auto it = std::find_if(kKeys.begin(), kKeys.end(),
                               [&](const KeySpec &k) { return k.name == key; });
  if (it == kKeys.end())
    throw Error("cli.config", "unknown configuration key '" + key + "'");
  return *it;
}

void RunConfig::set(const std::string &key, const std::string &raw) {
  const KeySpec &k = spec(key);
  const std::string value = trim(raw);
  std::int64_t i;
  double r;
  bool b;
  bool ok = true;
  switch (k.type) {
  case kInt:
    ok = parse_int(value, i);
    break;
  case kReal:
    ok = parse_real(value, r);
    break;
  case kBool:
    ok = parse_bool(value, b);
    break;
  case kList:
    if (key == "ladder")
      for (const auto &item: split_list(value))
        ok = ok && parse_real(item, r);
    break;
  case kText:
  case kPath:
    break;
  }
  if (!ok)
    throw Error("cli.config", "bad value '" + value + "' for " + key);
  values_[key] = value;
}

void RunConfig::load(std::istream &in, const std::string &source) {
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    const std::string content = trim(line);
    if (content.empty())
      continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos)
      throw Error("cli.config", source + ":" + std::to_string(number)
                                    + ": expected key=value");
    try {
      set(trim(content.substr(0, eq)), content.substr(eq + 1));
    } catch (const Error &e) {
      throw Error("cli.config", source + ":" + std::to_string(number) + ": " + e.what());
    }
  }
}

void RunConfig::load_file(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("io.open", "cannot read config " + path.string());
  load(in, path.string());
}

bool RunConfig::is_set(const std::string &key) const { return !text(key).empty(); }

const std::string &RunConfig::text(const std::string &key) const {
  spec(key);
  return values_.at(key);
}

std::int64_t RunConfig::integer(const std::string &key) const {
  std::int64_t v = 0;
  parse_int(text(key), v);
  return v;
}

std::size_t RunConfig::count(const std::string &key, std::int64_t minimum) const {
  const std::int64_t v = integer(key);
  if (v < minimum)
    throw Error("cli.config", key + " must be at least " + std::to_string(minimum)
                                  + ", got " + std::to_string(v));
  return static_cast<std::size_t>(v);
}

double RunConfig::real(const std::string &key) const {
  double v = 0;
  parse_real(text(key), v);
  return v;
}

bool RunConfig::boolean(const std::string &key) const {
  bool v = false;
  parse_bool(text(key), v);
  return v;
}

std::vector<std::string> RunConfig::list(const std::string &key) const {
  return split_list(text(key));
}

std::vector<double> RunConfig::reals(const std::string &key) const {
  std::vector<double> out;
  for (const auto &item: list(key)) {
    double v = 0;
    parse_real(item, v);
    out.push_back(v);
  }
  return out;
}

std::filesystem::path RunConfig::required_path(const std::string &key) const {
  if (!is_set(key))
    throw Error("cli.config", "missing " + flag_name(key) + " (config key " + key + ")");
  return text(key);
}

std::string RunConfig::dump() const {
  std::string out;
  for (const auto &k: kKeys)
    out += k.name + "=" + values_.at(k.name) + "\n";
  return out;
}

}  // namespace molfp::cli
