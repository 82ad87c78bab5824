//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli/commands.h"

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "cli/dataset_csv.h"
#include "molfp/error.h"
#include "molfp/eval/report.h"
#include "molfp/eval/strata.h"
#include "molfp/fingerprints/ecfp.h"
#include "molfp/fingerprints/random_projection.h"
#include "molfp/fingerprints/st.h"
#include "molfp/numerics/pca.h"
#include "molfp/smiles/corpus.h"
#include "molfp/smiles/parser.h"
#include "molfp/transformer/checkpoint.h"
#include "molfp/transformer/train.h"

namespace molfp::cli {

namespace fs = std::filesystem;

namespace {

class Log {
public:
  Log(const RunConfig &config, std::ostream &out)
      : out_(out), quiet_(config.boolean("quiet")) { }

  template <class... Parts>
  void line(const Parts &...parts) {
    if (quiet_)
      return;
    (out_ << ... << parts) << '\n';
    out_.flush();
  }

private:
  std::ostream &out_;
  bool quiet_;
};

void require_readable(const fs::path &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("io.open", "cannot read " + path.string());
}

// Creates the parent directory of `path` and checks it is writable.
void prepare_output(const fs::path &path) {
  const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir))
    throw Error("io.write", "cannot create directory " + dir.string());
}

void prepare_directory(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir))
    throw Error("io.write", "cannot create directory " + dir.string());
}

// Writes through a temporary file renamed into place, so a failed command
// never leaves a truncated table behind.
template <class Writer>
void write_file(const fs::path &path, Writer &&writer) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("io.write", "cannot write " + path.string());
    writer(out);
    out.flush();
    if (!out)
      throw Error("io.write", "failed writing " + path.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec)
    throw Error("io.write", "cannot move " + tmp.string() + " to " + path.string());
}

std::string format_float(float value) {
  char buffer[32];
  const auto r = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, r.ptr);
}

transformer::ModelConfig model_config(const RunConfig &config, std::size_t vocab) {
  transformer::ModelConfig c;
  c.n_layers = config.count("n_layers");
  c.n_heads = config.count("n_heads");
  c.d_model = config.count("d_model");
  c.d_ff = config.count("d_ff", 0);
  c.max_seq_len = config.count("max_seq_len", 3);
  c.vocab_size = vocab;
  c.dropout = config.real("dropout");
  c.validate();
  return c;
}

const std::vector<std::string> kKinds { "st", "ecfp", "random" };

void check_kind(const std::string &kind) {
  if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end())
    throw Error("cli.config", "unknown fingerprint kind '" + kind
                                  + "' (expected st, ecfp or random)");
}

std::vector<eval::Predictor> configured_predictors(const RunConfig &config) {
  std::vector<eval::Predictor> out;
  for (const auto &name: config.list("predictor")) {
    if (name == "linear")
      out.push_back(eval::Predictor::kLinear);
    else if (name == "mlp")
      out.push_back(eval::Predictor::kMlp);
    else
      throw Error("cli.config", "unknown predictor '" + name + "' (expected linear or mlp)");
  }
  if (out.empty())
    throw Error("cli.config", "no predictor selected");
  return out;
}

std::vector<std::string> configured_models(const RunConfig &config) {
  auto models = config.list("models");
  if (models.empty())
    throw Error("cli.config", "no fingerprint model selected");
  for (const auto &m: models)
    check_kind(m);
  return models;
}

bool needs_checkpoint(const std::vector<std::string> &kinds) {
  return std::find(kinds.begin(), kinds.end(), "st") != kinds.end();
}

void require_checkpoint(const RunConfig &config) {
  if (!config.is_set("checkpoint"))
    throw Error("cli.missing_checkpoint",
                "st fingerprints need --checkpoint (config key checkpoint)");
  const auto paths = transformer::checkpoint_paths(config.text("checkpoint"));
  require_readable(paths.manifest);
  require_readable(paths.blob);
}

predictors::MlpConfig mlp_config(const RunConfig &config) {
  predictors::MlpConfig m;
  m.hidden = config.count("mlp_hidden");
  m.max_epochs = config.count("mlp_epochs");
  m.lr = config.real("mlp_lr");
  m.alpha = config.real("mlp_alpha");
  m.batch_size = config.count("mlp_batch");
  m.patience = config.count("mlp_patience");
  return m;
}

// Checkpoint loaded at most once per command.
class CheckpointCache {
public:
  explicit CheckpointCache(const RunConfig &config): config_(config) { }

  const transformer::Checkpoint &get() {
    if (!loaded_)
      loaded_.emplace(transformer::load_checkpoint(config_.text("checkpoint")));
    return *loaded_;
  }

private:
  const RunConfig &config_;
  std::optional<transformer::Checkpoint> loaded_;
};

eval::FeatureSet featurize_with(const RunConfig &config, const std::string &kind,
                                const std::vector<std::string> &smiles,
                                CheckpointCache &cache) {
  check_kind(kind);
  eval::FeatureSet f;
  f.name = kind;
  if (kind == "st") {
    const auto &ckpt = cache.get();
    const auto rows = fingerprints::st_fingerprints(ckpt.model, ckpt.vocab, smiles,
                                                    config.count("st_batch"));
    f.features = rows.cast<double>();
    f.standardize = true;
  } else if (kind == "ecfp") {
    const int diameter = static_cast<int>(config.count("ecfp_diameter", 0));
    const std::size_t bits = config.count("ecfp_bits");
    f.features = eval::Matrix({ smiles.size(), bits });
    for (std::size_t i = 0; i < smiles.size(); ++i) {
      const auto fp = fingerprints::ecfp(smiles::parse(smiles[i]), diameter, bits);
      std::copy(fp.begin(), fp.end(), f.features.row(i).begin());
    }
    f.standardize = false;
  } else {
    const std::size_t dims = config.count("random_dims");
    const auto seed = static_cast<std::uint64_t>(config.integer("seed"));
    f.features = eval::Matrix({ smiles.size(), dims });
    for (std::size_t i = 0; i < smiles.size(); ++i) {
      const auto fp = fingerprints::random_projection_fingerprint(smiles[i], seed, dims);
      std::copy(fp.begin(), fp.end(), f.features.row(i).begin());
    }
    f.standardize = true;
  }
  return f;
}

void check_smallest_fraction(const eval::Dataset &data,
                             const std::vector<double> &ladder) {
  for (double fraction: ladder) {
    if (!(fraction > 0.0 && fraction < 1.0))
      throw Error("cli.config", "ladder fractions must lie in (0, 1)");
    const auto train = std::llround(fraction * static_cast<double>(data.rows()));
    if (train < 2)
      throw Error("cli.too_few_rows",
                  data.name + ": " + std::to_string(data.rows()) + " rows give "
                      + std::to_string(train) + " training rows at fraction "
                      + eval::format_number(fraction) + "; at least 2 are needed");
  }
  for (std::size_t i = 1; i < ladder.size(); ++i)
    if (!(ladder[i] > ladder[i - 1]))
      throw Error("cli.config", "ladder must be strictly increasing");
}

}  // namespace

eval::Dataset load_configured_dataset(const RunConfig &config) {
  DatasetCsvOptions options;
  const std::string type = config.text("task_type");
  if (type == "regression")
    options.task_type = eval::Task::kRegression;
  else if (type == "classification")
    options.task_type = eval::Task::kClassification;
  else
    throw Error("cli.config", "--task-type must be regression or classification"
                              + std::string(type.empty() ? "" : ", got '" + type + "'"));
  if (!config.text("metric").empty()) {
    options.metric = eval::parse_metric(config.text("metric"));
    if (!options.metric)
      throw Error("cli.config", "unknown metric '" + config.text("metric") + "'");
  }
  options.tasks = config.list("tasks");
  options.smiles_column = config.text("smiles_column");
  options.name = config.text("dataset_name");
  return load_dataset_csv(config.required_path("dataset"), options);
}

eval::FeatureSet featurize(const RunConfig &config, const std::string &kind,
                           const std::vector<std::string> &smiles) {
  CheckpointCache cache(config);
  return featurize_with(config, kind, smiles, cache);
}

void cmd_pretrain(const RunConfig &config, std::ostream &out) {
  Log log(config, out);
  const fs::path corpus_path = config.required_path("corpus");
  const fs::path stem = config.required_path("checkpoint");
  require_readable(corpus_path);
  const auto paths = transformer::checkpoint_paths(stem);
  prepare_output(paths.manifest);
  const fs::path stats_path = paths.manifest.parent_path()
                              / (paths.manifest.stem().string() + ".stats.csv");

  const std::size_t max_len = config.count("max_seq_len", 3);
  const auto corpus = smiles::read_corpus(
      corpus_path, { .max_tokens = max_len - 2,
                     .limit = config.count("corpus_limit", 0) });
  if (corpus.smiles.empty())
    throw Error("cli.empty_corpus", corpus_path.string() + " has no usable SMILES ("
                                        + std::to_string(corpus.skipped) + " skipped)");
  const auto vocab = transformer::pretrain_vocab(corpus.smiles);
  const auto seed = static_cast<std::uint64_t>(config.integer("seed"));
  transformer::TransformerModel<float> model(model_config(config, vocab.size()), seed);
  log.line("pretrain: ", corpus.smiles.size(), " molecules (", corpus.skipped,
           " skipped), vocabulary ", vocab.size(), ", ", model.parameter_count(),
           " parameters");

  transformer::TrainOptions options;
  options.epochs = config.count("epochs");
  options.batch_size = config.count("batch_size");
  options.enumerate = config.boolean("enumerate");
  options.seed = seed;
  options.adam.lr = config.real("lr");

  std::ostringstream stats;
  stats << "epoch,step,loss,perplexity,skipped\n";
  transformer::train(model, vocab, corpus, options, [&](const transformer::TrainStats &s) {
    log.line("epoch=", s.epoch, " step=", s.step, " loss=", eval::format_number(s.mean_loss),
             " perplexity=", eval::format_number(s.perplexity), " skipped=", s.skipped,
             " tokens_per_sec=", static_cast<long long>(s.tokens_per_sec));
    stats << s.epoch << ',' << s.step << ',' << eval::format_number(s.mean_loss) << ','
          << eval::format_number(s.perplexity) << ',' << s.skipped << '\n';
    transformer::save_checkpoint(model, vocab, stem);
    write_file(stats_path, [&](std::ostream &o) { o << stats.str(); });
  });
}

void cmd_embed(const RunConfig &config, std::ostream &out) {
  Log log(config, out);
  const std::string kind = config.text("kind");
  check_kind(kind);
  const fs::path input = config.required_path("input");
  const fs::path output = config.required_path("output");
  require_readable(input);
  if (kind == "st")
    require_checkpoint(config);
  prepare_output(output);

  std::vector<std::string> lines;
  {
    std::ifstream in(input);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream fields(line);
      std::string smiles;
      if (fields >> smiles)
        lines.push_back(smiles);
    }
  }

  // Valid rows are fingerprinted together; failures keep their position.
  std::vector<std::string> errors(lines.size());
  std::vector<std::string> valid;
  std::vector<std::size_t> valid_rows;
  CheckpointCache cache(config);
  const std::size_t max_len =
      kind == "st" ? cache.get().model.config().max_seq_len : 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      smiles::parse(lines[i]);
      if (kind == "st"
          && transformer::encode_smiles(cache.get().vocab, lines[i]).size() + 2 > max_len)
        throw Error("transformer.too_long", lines[i]);
      valid.push_back(lines[i]);
      valid_rows.push_back(i);
    } catch (const Error &e) {
      errors[i] = e.kind();
    }
  }
  const auto features = featurize_with(config, kind, valid, cache);
  const std::size_t dims = kind == "ecfp" ? 0 : features.features.cols();

  std::vector<std::string> rows(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    if (!errors[i].empty())
      rows[i] = csv_field(lines[i]) + ",#error:" + errors[i];
  std::vector<float> st_row;
  for (std::size_t v = 0; v < valid.size(); ++v) {
    std::string row = csv_field(valid[v]);
    const auto values = features.features.row(v);
    if (kind == "ecfp") {
      std::vector<std::uint8_t> bits(values.begin(), values.end());
      row += "," + fingerprints::bits_to_hex(bits);
    } else if (kind == "st") {
      for (double x: values)
        row += "," + format_float(static_cast<float>(x));
    } else {
      for (double x: values)
        row += "," + eval::format_number(x);
    }
    rows[valid_rows[v]] = std::move(row);
  }

  write_file(output, [&](std::ostream &o) {
    o << "smiles";
    if (kind == "ecfp")
      o << ",ecfp_hex";
    else
      for (std::size_t j = 0; j < dims; ++j)
        o << ',' << kind << '_' << j;
    o << '\n';
    for (const auto &row: rows)
      o << row << '\n';
  });
  const std::size_t failed = lines.size() - valid.size();
  log.line("embed: ", lines.size(), " rows, ", failed, " error rows -> ", output.string());
}

namespace {

void log_cells(Log &log, const std::string &where, const std::vector<eval::DemRecord> &records) {
  for (const auto &r: records) {
    const std::string cell = where + " fraction=" + eval::format_number(r.fraction)
                             + " trial=" + std::to_string(r.trial);
    for (const auto &task: r.dropped_tasks)
      log.line("note: ", cell, ": dropped task '", task, "'");
    if (!r.value)
      log.line("note: ", cell, ": missing (", r.error, ")");
  }
}

struct BenchInputs {
  eval::Dataset data;
  std::vector<std::string> models;
  std::vector<eval::Predictor> predictors;
  fs::path dir;
};

BenchInputs prepare_bench(const RunConfig &config) {
  BenchInputs in;
  in.models = configured_models(config);
  in.predictors = configured_predictors(config);
  const fs::path dataset = config.required_path("dataset");
  require_readable(dataset);
  if (needs_checkpoint(in.models))
    require_checkpoint(config);
  in.dir = config.text("output_dir");
  prepare_directory(in.dir);
  in.data = load_configured_dataset(config);
  return in;
}

}  // namespace

void cmd_bench(const RunConfig &config, std::ostream &out) {
  Log log(config, out);
  BenchInputs in = prepare_bench(config);
  eval::DemOptions options;
  options.ladder = config.reals("ladder");
  if (options.ladder.empty())
    throw Error("cli.config", "ladder is empty");
  check_smallest_fraction(in.data, options.ladder);
  options.trials = config.count("trials");
  options.base_seed = static_cast<std::uint64_t>(config.integer("seed"));
  options.jobs = config.count("jobs");
  options.lambda = config.real("lambda");
  options.mlp = mlp_config(config);
  log.line("bench: ", in.data.name, " with ", in.data.rows(), " molecules (",
           in.data.dropped, " dropped), ", in.data.tasks(), " task(s), metric ",
           eval::to_string(in.data.metric));

  CheckpointCache cache(config);
  std::vector<eval::DemReport> reports;
  for (const auto &kind: in.models) {
    const auto features = featurize_with(config, kind, in.data.smiles, cache);
    for (auto predictor: in.predictors) {
      auto report = eval::dem(in.data, features, predictor, options);
      log_cells(log, report.dataset + " " + report.model, report.records);
      log.line(report.dataset, " ", report.model, " DEM ",
               report.dem ? eval::format_number(*report.dem) : std::string("missing"));
      reports.push_back(std::move(report));
    }
  }
  write_file(in.dir / "records.csv", [&](std::ostream &o) { eval::write_records(o, reports); });
  write_file(in.dir / "summary.csv", [&](std::ostream &o) { eval::write_summary(o, reports); });
  write_file(in.dir / "plot.csv", [&](std::ostream &o) { eval::write_plot(o, reports); });
  for (const auto &r: reports)
    if (!r.dem)
      throw Error("eval.aggregate", r.model + " on " + r.dataset
                                        + " has a fraction without any scored trial");
}

void cmd_strata(const RunConfig &config, std::ostream &out) {
  Log log(config, out);
  BenchInputs in = prepare_bench(config);
  eval::StrataOptions options;
  options.groups = config.count("groups");
  options.fraction = config.real("strata_fraction");
  options.trials = config.count("trials");
  options.base_seed = static_cast<std::uint64_t>(config.integer("seed"));
  options.jobs = config.count("jobs");
  options.lambda = config.real("lambda");
  options.mlp = mlp_config(config);
  const std::size_t minimum = 10 * options.groups;
  if (in.data.rows() < minimum)
    throw Error("eval.too_few_rows", std::to_string(options.groups) + " groups need at least "
                                         + std::to_string(minimum) + " rows, "
                                         + in.data.name + " has "
                                         + std::to_string(in.data.rows()));

  CheckpointCache cache(config);
  std::vector<eval::StrataReport> reports;
  for (const auto &kind: in.models) {
    const auto features = featurize_with(config, kind, in.data.smiles, cache);
    for (auto predictor: in.predictors) {
      auto report = eval::strata_eval(in.data, features, predictor, options);
      for (const auto &g: report.groups) {
        log_cells(log, report.dataset + " " + report.model + " group=" + std::to_string(g.index),
                  g.records);
        log.line(report.dataset, " ", report.model, " group ", g.index, " lengths ",
                 g.min_length, "-", g.max_length, ": ",
                 g.mean ? eval::format_number(*g.mean) : std::string("missing"));
      }
      reports.push_back(std::move(report));
    }
  }
  write_file(in.dir / "strata.csv", [&](std::ostream &o) { eval::write_strata(o, reports); });
  write_file(in.dir / "strata_lengths.csv",
             [&](std::ostream &o) { eval::write_length_histogram(o, reports.front()); });
}

void cmd_project(const RunConfig &config, std::ostream &out) {
  Log log(config, out);
  const std::string kind = config.text("kind");
  check_kind(kind);
  const fs::path dataset = config.required_path("dataset");
  const fs::path output = config.required_path("output");
  require_readable(dataset);
  if (kind == "st")
    require_checkpoint(config);
  prepare_output(output);
  const std::size_t k = config.count("k");
  const auto data = load_configured_dataset(config);
  const auto features = featurize(config, kind, data.smiles);
  const std::size_t limit = std::min(features.features.rows(), features.features.cols());
  if (k > limit)
    throw Error("cli.config", "k=" + std::to_string(k) + " exceeds min(rows, dims) = "
                                  + std::to_string(limit));
  const auto pca = numerics::pca_fit(features.features, k);

  write_file(output, [&](std::ostream &o) {
    o << "smiles";
    for (const auto &t: data.task_names)
      o << ',' << csv_field(t);
    for (std::size_t c = 0; c < k; ++c)
      o << ",pc" << c + 1;
    o << '\n';
    for (std::size_t r = 0; r < data.rows(); ++r) {
      o << csv_field(data.smiles[r]);
      for (std::size_t t = 0; t < data.tasks(); ++t)
        o << ',' << (data.has_label(r, t) ? eval::format_number(data.label(r, t)) : "");
      for (std::size_t c = 0; c < k; ++c)
        o << ',' << eval::format_number(pca.scores.at(r, c));
      o << '\n';
    }
  });
  std::string variance;
  for (double v: pca.variance)
    variance += " " + eval::format_number(v);
  log.line("project: ", data.rows(), " rows, component variance", variance, " -> ",
           output.string());
}

}  // namespace molfp::cli
