//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TRANSFORMER_TRAIN_H_
#define MOLFP_TRANSFORMER_TRAIN_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "molfp/numerics/adam.h"
#include "molfp/random.h"
#include "molfp/smiles/corpus.h"
#include "molfp/smiles/mol_graph.h"
#include "molfp/smiles/vocab.h"
#include "molfp/transformer/model.h"

namespace molfp::transformer {

struct TrainOptions {
  std::size_t epochs = 1;
  std::size_t batch_size = 64;
  // Re-serialize every molecule from a random root each time it is used.
  bool enumerate = true;
  std::uint64_t seed = 0;
  numerics::AdamOptions adam {};
};

struct TrainStats {
  std::size_t epoch = 0;
  // Optimizer steps taken so far, over all epochs.
  std::size_t step = 0;
  // Token-weighted mean training cross-entropy of the epoch.
  double mean_loss = 0;
  double perplexity = 0;
  double tokens_per_sec = 0;
  std::size_t skipped = 0;
};

// Vocabulary over the corpus tokens plus the ring-closure labels and explicit
// bond symbols that re-serialization can introduce.
smiles::Vocab pretrain_vocab(std::span<const std::string> corpus);

// Token ids of `smiles` without BOS/EOS; unknown tokens map to UNK.
std::vector<TokenId> encode_smiles(const smiles::Vocab &vocab,
                                   std::string_view smiles);

// Stateful training loop over a fixed corpus; epochs can be run one at a
// time. Deterministic given the options.
class Trainer {
public:
  // Throws Error("transformer.empty_corpus") for an empty corpus and
  // Error("transformer.too_long") if a stored SMILES does not fit.
  Trainer(TransformerModel<float> &model, const smiles::Vocab &vocab,
          std::vector<std::string> corpus, TrainOptions options);

  // Throws Error("transformer.diverged") naming the step of a non-finite
  // loss.
  TrainStats run_epoch();

  std::size_t step() const noexcept { return step_; }

private:
  static constexpr std::size_t kBucketBatches = 50;

  std::vector<std::vector<std::size_t>> plan_batches();
  std::vector<TokenId> sample(std::size_t index);

  TransformerModel<float> &model_;
  const smiles::Vocab &vocab_;
  std::vector<std::string> corpus_;
  std::vector<std::vector<TokenId>> stored_;
  std::vector<smiles::MolGraph> graphs_;
  TrainOptions options_;
  Rng rng_;
  numerics::AdamState<float> adam_;
  std::vector<numerics::Parameter<float> *> params_;
  std::size_t epoch_ = 0;
  std::size_t step_ = 0;
};

std::vector<TrainStats> train(
    TransformerModel<float> &model, const smiles::Vocab &vocab,
    const smiles::Corpus &corpus, const TrainOptions &options,
    const std::function<void(const TrainStats &)> &on_epoch = {});

// Summed teacher-forced negative log-likelihood, no dropout.
struct NllSum {
  double total = 0;
  std::size_t tokens = 0;
};

template <class T>
NllSum corpus_nll(const TransformerModel<T> &model, const smiles::Vocab &vocab,
                  std::span<const std::string> corpus,
                  std::size_t batch_size = 64);

// exp(mean per-token cross-entropy) over the stored strings.
// Throws Error("transformer.empty_corpus").
template <class T>
double perplexity(const TransformerModel<T> &model, const smiles::Vocab &vocab,
                  std::span<const std::string> corpus,
                  std::size_t batch_size = 64);

}  // namespace molfp::transformer

#endif  // MOLFP_TRANSFORMER_TRAIN_H_
