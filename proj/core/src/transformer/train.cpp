//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/transformer/train.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "molfp/error.h"
#include "molfp/smiles/parser.h"
#include "molfp/smiles/tokenizer.h"
#include "molfp/smiles/writer.h"

namespace molfp::transformer {

using smiles::Token;
using smiles::Vocab;

smiles::Vocab pretrain_vocab(std::span<const std::string> corpus) {
  std::vector<std::vector<Token>> sequences;
  sequences.reserve(corpus.size() + 1);
  for (const auto &s: corpus)
    sequences.push_back(smiles::tokenize(s));
  std::vector<Token> extra { Token { "-" }, Token { ":" } };
  for (int label = 1; label <= 9; ++label)
    extra.push_back(Token { std::to_string(label) });
  for (int label = 10; label <= 19; ++label)
    extra.push_back(Token { "%" + std::to_string(label) });
  sequences.push_back(std::move(extra));
  return Vocab::build(sequences);
}

std::vector<TokenId> encode_smiles(const smiles::Vocab &vocab,
                                   std::string_view smiles) {
  const auto tokens = smiles::tokenize(smiles);
  return vocab.encode(tokens);
}

Trainer::Trainer(TransformerModel<float> &model, const smiles::Vocab &vocab,
                 std::vector<std::string> corpus, TrainOptions options)
    : model_(model), vocab_(vocab), corpus_(std::move(corpus)),
      options_(options), rng_(options.seed), adam_(options.adam),
      params_(model.parameter_pointers()) {
  if (corpus_.empty())
    throw Error("transformer.empty_corpus", "training corpus is empty");
  if (options_.batch_size == 0)
    throw Error("transformer.config", "batch_size must be >= 1");
  const std::size_t limit = model_.config().max_seq_len;
  for (const auto &s: corpus_) {
    stored_.push_back(encode_smiles(vocab_, s));
    if (stored_.back().size() + 2 > limit)
      throw Error("transformer.too_long",
                  "'" + s + "' has " + std::to_string(stored_.back().size())
                      + " tokens; max_seq_len " + std::to_string(limit)
                      + " allows " + std::to_string(limit - 2));
    if (options_.enumerate)
      graphs_.push_back(smiles::parse(s));
  }
}

std::vector<TokenId> Trainer::sample(std::size_t index) {
  if (!options_.enumerate)
    return stored_[index];
  const std::string variant = smiles::enumerate_random(graphs_[index], rng_);
  auto ids = encode_smiles(vocab_, variant);
  if (ids.size() + 2 > model_.config().max_seq_len)
    return stored_[index];
  return ids;
}

std::vector<std::vector<std::size_t>> Trainer::plan_batches() {
  std::vector<std::size_t> order(corpus_.size());
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  rng_.shuffle(std::span<std::size_t>(order));

  // Batches are drawn from length-sorted windows of shuffled rows to limit
  // padding; the batch order is shuffled again afterwards.
  const std::size_t window = options_.batch_size * kBucketBatches;
  std::vector<std::vector<std::size_t>> batches;
  for (std::size_t w = 0; w < order.size(); w += window) {
    const auto begin = order.begin() + static_cast<std::ptrdiff_t>(w);
    const auto end = order.begin()
                     + static_cast<std::ptrdiff_t>(
                         std::min(order.size(), w + window));
    std::stable_sort(begin, end, [&](std::size_t a, std::size_t b) {
      return stored_[a].size() < stored_[b].size();
    });
    for (auto it = begin; it < end;) {
      const auto stop = it + std::min<std::ptrdiff_t>(
                                 end - it, static_cast<std::ptrdiff_t>(
                                               options_.batch_size));
      batches.emplace_back(it, stop);
      it = stop;
    }
  }
  rng_.shuffle(std::span<std::vector<std::size_t>>(batches));
  return batches;
}

TrainStats Trainer::run_epoch() {
  const auto start = std::chrono::steady_clock::now();
  double loss_sum = 0;
  std::size_t tokens = 0;
  for (const auto &rows: plan_batches()) {
    std::vector<std::vector<TokenId>> sequences;
    for (std::size_t row: rows)
      sequences.push_back(sample(row));
    const AutoencoderBatch batch = make_autoencoder_batch(sequences);

    for (auto *p: params_)
      p->grad.fill(0.0f);
    numerics::Tape<float> tape;
    const Pass<float> pass { tape, model_, true, &rng_ };
    const auto loss = autoencoder_loss(pass, batch);
    const float value = loss.value()[0];
    ++step_;
    if (!std::isfinite(value))
      throw Error("transformer.diverged",
                  "non-finite loss at step " + std::to_string(step_));
    tape.backward(loss);
    numerics::adam_step<float>(params_, adam_);

    loss_sum += static_cast<double>(value)
                * static_cast<double>(batch.target_tokens);
    tokens += batch.target_tokens;
  }

  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  TrainStats stats;
  stats.epoch = ++epoch_;
  stats.step = step_;
  stats.mean_loss = loss_sum / static_cast<double>(tokens);
  stats.perplexity = std::exp(stats.mean_loss);
  stats.tokens_per_sec = seconds > 0 ? static_cast<double>(tokens) / seconds
                                     : 0.0;
  return stats;
}

std::vector<TrainStats> train(
    TransformerModel<float> &model, const smiles::Vocab &vocab,
    const smiles::Corpus &corpus, const TrainOptions &options,
    const std::function<void(const TrainStats &)> &on_epoch) {
  Trainer trainer(model, vocab, corpus.smiles, options);
  std::vector<TrainStats> out;
  for (std::size_t e = 0; e < options.epochs; ++e) {
    TrainStats stats = trainer.run_epoch();
    stats.skipped = corpus.skipped;
    if (on_epoch)
      on_epoch(stats);
    out.push_back(stats);
  }
  return out;
}

template <class T>
NllSum corpus_nll(const TransformerModel<T> &model, const smiles::Vocab &vocab,
                  std::span<const std::string> corpus,
                  std::size_t batch_size) {
  NllSum out;
  const std::size_t step = std::max<std::size_t>(1, batch_size);
  for (std::size_t first = 0; first < corpus.size(); first += step) {
    const std::size_t last = std::min(corpus.size(), first + step);
    std::vector<std::vector<TokenId>> sequences;
    for (std::size_t i = first; i < last; ++i)
      sequences.push_back(encode_smiles(vocab, corpus[i]));
    const AutoencoderBatch batch = make_autoencoder_batch(sequences);

    numerics::Tape<T> tape;
    const Pass<T> pass { tape, model };
    const auto layers = encode(pass, batch.src);
    const Tensor<T> &logits =
        decode(pass, batch.tgt_in, batch.src, layers.back()).value();
    const std::size_t vocab_size = logits.cols();
    for (std::size_t r = 0; r < batch.tgt_out.size(); ++r) {
      if (batch.tgt_pad[r])
        continue;
      const T *z = logits.data() + r * vocab_size;
      double mx = z[0];
      for (std::size_t j = 1; j < vocab_size; ++j)
        mx = std::max(mx, static_cast<double>(z[j]));
      double s = 0;
      for (std::size_t j = 0; j < vocab_size; ++j)
        s += std::exp(static_cast<double>(z[j]) - mx);
      out.total += mx + std::log(s)
                   - static_cast<double>(z[batch.tgt_out[r]]);
      ++out.tokens;
    }
  }
  return out;
}

template <class T>
double perplexity(const TransformerModel<T> &model, const smiles::Vocab &vocab,
                  std::span<const std::string> corpus,
                  std::size_t batch_size) {
  if (corpus.empty())
    throw Error("transformer.empty_corpus",
                "perplexity needs at least one SMILES");
  const NllSum nll = corpus_nll(model, vocab, corpus, batch_size);
  return std::exp(nll.total / static_cast<double>(nll.tokens));
}

template NllSum corpus_nll<float>(const TransformerModel<float> &,
                                  const smiles::Vocab &,
                                  std::span<const std::string>, std::size_t);
template NllSum corpus_nll<double>(const TransformerModel<double> &,
                                   const smiles::Vocab &,
                                   std::span<const std::string>, std::size_t);
template double perplexity<float>(const TransformerModel<float> &,
                                  const smiles::Vocab &,
                                  std::span<const std::string>, std::size_t);
template double perplexity<double>(const TransformerModel<double> &,
                                   const smiles::Vocab &,
                                   std::span<const std::string>, std::size_t);

}  // namespace molfp::transformer
