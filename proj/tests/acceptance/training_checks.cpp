//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <chrono>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>

#include "acceptance.h"
#include "cli/dataset_csv.h"
#include "molfp/error.h"
#include "molfp/eval/dem.h"
#include "molfp/eval/report.h"
#include "molfp/fingerprints/ecfp.h"
#include "molfp/fingerprints/random_projection.h"
#include "molfp/fingerprints/st.h"
#include "molfp/smiles/corpus.h"
#include "molfp/smiles/parser.h"
#include "molfp/transformer/checkpoint.h"
#include "molfp/transformer/train.h"

namespace molfp::acceptance {

namespace {

constexpr const char *kEsolTask = "measured log solubility in mols per litre";
constexpr std::uint64_t kSeed = 0;

// Pre-training setup of the ST-versus-control comparison.
constexpr std::size_t kPretrainMolecules = 50000;
constexpr std::size_t kPretrainEpochs = 1;

eval::Dataset load_esol(const Options &options) {
  cli::DatasetCsvOptions csv;
  csv.name = "ESOL";
  csv.task_type = eval::Task::kRegression;
  csv.tasks = { kEsolTask };
  auto data = cli::load_dataset_csv(options.data_dir / "delaney.csv", csv);
  if (data.rows() != 1128)
    throw Error("acceptance.data", "ESOL has " + std::to_string(data.rows())
                                       + " usable rows, expected 1128");
  return data;
}

eval::DemOptions dem_options() {
  eval::DemOptions o;
  o.trials = 20;
  o.base_seed = kSeed;
  o.lambda = 1.0;
  return o;
}

transformer::ModelConfig small_config(std::size_t vocab_size) {
  transformer::ModelConfig c;
  c.n_layers = 2;
  c.n_heads = 2;
  c.d_model = 64;
  c.d_ff = 256;
  c.max_seq_len = 256;
  c.vocab_size = vocab_size;
  c.dropout = 0.1;
  return c;
}

void progress(const Options &options, const std::string &line) {
  if (options.verbose) {
    std::fprintf(stderr, "%s\n", line.c_str());
    std::fflush(stderr);
  }
}

}  // namespace

Outcome memorization(const Options &options) {
  const auto corpus = smiles::read_corpus(options.data_dir / "memorize_100.smi");
  if (corpus.smiles.size() != 100 || corpus.skipped != 0)
    return { false, "memorization corpus must hold 100 valid SMILES" };
  const auto vocab = transformer::pretrain_vocab(corpus.smiles);
  auto cfg = small_config(vocab.size());
  cfg.max_seq_len = 128;
  transformer::TransformerModel<float> model(cfg, kSeed);

  transformer::TrainOptions train;
  train.batch_size = 16;
  train.enumerate = false;
  train.seed = kSeed;
  train.adam.lr = 1e-3;
  constexpr std::size_t kStepBudget = 3000;
  constexpr double kTarget = 1.05;

  transformer::Trainer trainer(model, vocab, corpus.smiles, train);
  double ppl = transformer::perplexity(model, vocab, corpus.smiles);
  while (ppl >= kTarget && trainer.step() < kStepBudget) {
    const auto stats = trainer.run_epoch();
    ppl = transformer::perplexity(model, vocab, corpus.smiles);
    if (stats.epoch % 10 == 0)
      progress(options, "memorization epoch " + std::to_string(stats.epoch) + " step "
                            + std::to_string(stats.step) + " perplexity "
                            + eval::format_number(ppl));
  }
  std::ostringstream d;
  d << "2 layers, d_model 64, 2 heads: perplexity " << ppl << " after " << trainer.step()
    << " steps (target < " << kTarget << " within " << kStepBudget << " steps)";
  return { ppl < kTarget, d.str() };
}

Outcome esol_ecfp_dem(const Options &options) {
  const auto data = load_esol(options);
  eval::FeatureSet features;
  features.name = "ecfp";
  features.features = eval::Matrix({ data.rows(), 1024 });
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto bits = fingerprints::ecfp(smiles::parse(data.smiles[i]), 4, 1024);
    std::copy(bits.begin(), bits.end(), features.features.row(i).begin());
  }
  features.standardize = false;
  const auto report = eval::dem(data, features, eval::Predictor::kLinear, dem_options());
  if (!report.dem)
    return { false, "DEM missing: a fraction had no scored trial" };
  std::ostringstream d;
  d << "ESOL ECFP(1024)+ridge DEM RMSE " << *report.dem << " (band [1.3, 2.1], "
    << report.records.size() << " cells)";
  return { *report.dem >= 1.3 && *report.dem <= 2.1, d.str() };
}

Outcome st_beats_random_projection(const Options &options) {
  const auto data = load_esol(options);
  std::optional<transformer::Checkpoint> checkpoint;
  std::string origin;
  if (options.checkpoint) {
    checkpoint.emplace(transformer::load_checkpoint(*options.checkpoint));
    origin = "reused checkpoint " + options.checkpoint->string();
  } else {
    const auto corpus = smiles::read_corpus(
        options.data_dir / "pretrain_60k.smi",
        { .max_tokens = small_config(0).max_seq_len - 2, .limit = kPretrainMolecules });
    if (corpus.smiles.size() < kPretrainMolecules)
      return { false, "pre-training corpus has only " + std::to_string(corpus.smiles.size())
                          + " usable SMILES" };
    auto vocab = transformer::pretrain_vocab(corpus.smiles);
    transformer::TransformerModel<float> model(small_config(vocab.size()), kSeed);
    transformer::TrainOptions train;
    train.epochs = kPretrainEpochs;
    train.batch_size = 64;
    train.seed = kSeed;
    train.adam.lr = 1e-3;
    double last_ppl = 0;
    transformer::train(model, vocab, corpus, train, [&](const transformer::TrainStats &s) {
      last_ppl = s.perplexity;
      progress(options, "pretrain epoch " + std::to_string(s.epoch) + " loss "
                            + eval::format_number(s.mean_loss) + " tokens/s "
                            + std::to_string(static_cast<long>(s.tokens_per_sec)));
    });
    checkpoint.emplace(transformer::Checkpoint { std::move(vocab), std::move(model) });
    std::ostringstream o;
    o << "pre-trained on " << corpus.smiles.size() << " SMILES for " << kPretrainEpochs
      << " epoch(s) (training perplexity " << last_ppl << ")";
    origin = o.str();
  }

  eval::FeatureSet st;
  st.name = "st";
  st.features = fingerprints::st_fingerprints(checkpoint->model, checkpoint->vocab,
                                              data.smiles)
                    .cast<double>();
  st.standardize = true;

  eval::FeatureSet control;
  control.name = "random";
  control.features = eval::Matrix({ data.rows(), st.features.cols() });
  for (std::size_t i = 0; i < data.rows(); ++i) {
    const auto v = fingerprints::random_projection_fingerprint(data.smiles[i], kSeed,
                                                               st.features.cols());
    std::copy(v.begin(), v.end(), control.features.row(i).begin());
  }
  control.standardize = true;

  const auto options_dem = dem_options();
  const auto st_report = eval::dem(data, st, eval::Predictor::kLinear, options_dem);
  const auto control_report = eval::dem(data, control, eval::Predictor::kLinear, options_dem);
  if (!st_report.dem || !control_report.dem)
    return { false, "DEM missing: a fraction had no scored trial" };
  std::ostringstream d;
  d << origin << "; ESOL ridge DEM RMSE: ST " << *st_report.dem << " vs random projection "
    << *control_report.dem << " (" << st.features.cols() << " dims each)";
  return { *st_report.dem < *control_report.dem, d.str() };
}

}  // namespace molfp::acceptance
