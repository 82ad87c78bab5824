//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <filesystem>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "molfp/fingerprints/ecfp.h"
#include "molfp/fingerprints/st.h"
#include "molfp/predictors/linear.h"
#include "molfp/random.h"
#include "molfp/smiles/corpus.h"
#include "molfp/smiles/parser.h"
#include "molfp/smiles/writer.h"
#include "molfp/transformer/train.h"

namespace {

using namespace molfp;

const std::vector<std::string> &molecules() {
  static const auto corpus =
      smiles::read_corpus(std::filesystem::path(MOLFP_DATA_DIR) / "parser_corpus.smi",
                          { .limit = 256 })
          .smiles;
  return corpus;
}

void BM_Parse(benchmark::State &state) {
  const auto &mols = molecules();
  for (auto _: state)
    for (const auto &s: mols)
      benchmark::DoNotOptimize(smiles::parse(s));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mols.size()));
}
BENCHMARK(BM_Parse);

void BM_EnumerateRandom(benchmark::State &state) {
  std::vector<smiles::MolGraph> graphs;
  for (const auto &s: molecules())
    graphs.push_back(smiles::parse(s));
  Rng rng(1);
  for (auto _: state)
    for (const auto &g: graphs)
      benchmark::DoNotOptimize(smiles::enumerate_random(g, rng));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * graphs.size()));
}
BENCHMARK(BM_EnumerateRandom);

void BM_Ecfp(benchmark::State &state) {
  std::vector<smiles::MolGraph> graphs;
  for (const auto &s: molecules())
    graphs.push_back(smiles::parse(s));
  for (auto _: state)
    for (const auto &g: graphs)
      benchmark::DoNotOptimize(fingerprints::ecfp(g, 4, 1024));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * graphs.size()));
}
BENCHMARK(BM_Ecfp);

void BM_StFingerprints(benchmark::State &state) {
  const auto &mols = molecules();
  const auto vocab = transformer::pretrain_vocab(mols);
  transformer::ModelConfig cfg;
  cfg.n_layers = 2;
  cfg.n_heads = 2;
  cfg.d_model = static_cast<std::size_t>(state.range(0));
  cfg.vocab_size = vocab.size();
  const transformer::TransformerModel<float> model(cfg, 2);
  for (auto _: state)
    benchmark::DoNotOptimize(fingerprints::st_fingerprints(model, vocab, mols, 32));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * mols.size()));
}
BENCHMARK(BM_StFingerprints)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_RidgeFit(benchmark::State &state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  predictors::Matrix x({ n, 1024 });
  for (double &v: x.values())
    v = rng.normal();
  std::vector<double> y(n);
  for (double &v: y)
    v = rng.normal();
  for (auto _: state)
    benchmark::DoNotOptimize(predictors::ridge_fit(x, y, 1.0));
}
BENCHMARK(BM_RidgeFit)->Arg(14)->Arg(225)->Arg(902)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
