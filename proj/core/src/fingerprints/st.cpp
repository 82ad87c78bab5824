//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/fingerprints/st.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "molfp/error.h"
#include "molfp/transformer/train.h"

namespace molfp::fingerprints {

using numerics::Tensor;
using transformer::TokenBatch;
using transformer::TransformerModel;

namespace {

void require_layers(const TransformerModel<float> &model) {
  if (model.config().n_layers < 2)
    throw Error("fingerprints.config",
                "pooling needs the penultimate encoder layer; model has "
                    + std::to_string(model.config().n_layers) + " layer(s)");
}

// Pools batch row b into out[0, 4d).
void pool(const Tensor<float> &last, const Tensor<float> &penultimate,
          const TokenBatch &batch, std::size_t b, std::span<float> out) {
  const std::size_t d = last.cols();
  std::vector<double> total(d, 0.0);
  std::vector<float> peak(d, -std::numeric_limits<float>::infinity());
  std::size_t count = 0;
  for (std::size_t t = 0; t < batch.len; ++t) {
    if (batch.is_pad(b, t))
      continue;
    const auto row = last.row(b * batch.len + t);
    for (std::size_t j = 0; j < d; ++j) {
      total[j] += row[j];
      peak[j] = std::max(peak[j], row[j]);
    }
    ++count;
  }
  const auto first_last = last.row(b * batch.len);
  const auto first_prev = penultimate.row(b * batch.len);
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = static_cast<float>(total[j] / static_cast<double>(count));
    out[d + j] = peak[j];
    out[2 * d + j] = first_last[j];
    out[3 * d + j] = first_prev[j];
  }
}

}  // namespace

std::vector<float> st_fingerprint(const TransformerModel<float> &model,
                                  const smiles::Vocab &vocab,
                                  std::string_view smiles) {
  const std::string s(smiles);
  Tensor<float> rows = st_fingerprints(model, vocab, std::span(&s, 1), 1);
  return std::move(rows.storage());
}

Tensor<float> st_fingerprints(const TransformerModel<float> &model,
                              const smiles::Vocab &vocab,
                              std::span<const std::string> smiles,
                              std::size_t batch_size) {
  require_layers(model);
  const std::size_t d = model.config().d_model;
  const std::size_t n = smiles.size();
  batch_size = std::max<std::size_t>(batch_size, 1);

  std::vector<std::vector<smiles::TokenId>> sequences(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto ids = transformer::encode_smiles(vocab, smiles[i]);
    sequences[i].reserve(ids.size() + 2);
    sequences[i].push_back(smiles::Vocab::kBos);
    sequences[i].insert(sequences[i].end(), ids.begin(), ids.end());
    sequences[i].push_back(smiles::Vocab::kEos);
  }
  // Length-sorted batches keep padding small.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sequences[a].size() < sequences[b].size();
  });

  Tensor<float> out({ n, 4 * d });
  std::vector<std::vector<smiles::TokenId>> chunk;
  for (std::size_t start = 0; start < n; start += batch_size) {
    const std::size_t stop = std::min(n, start + batch_size);
    chunk.clear();
    for (std::size_t k = start; k < stop; ++k)
      chunk.push_back(sequences[order[k]]);
    const TokenBatch batch = transformer::pad_batch(chunk);
    numerics::Tape<float> tape;
    const transformer::Pass<float> pass { tape, model };
    const auto layers = transformer::encode(pass, batch);
    const auto &last = layers.back().value();
    const auto &penultimate = layers[layers.size() - 2].value();
    for (std::size_t k = start; k < stop; ++k)
      pool(last, penultimate, batch, k - start, out.row(order[k]));
  }
  return out;
}

}  // namespace molfp::fingerprints
