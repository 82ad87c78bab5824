//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/transformer/model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "molfp/error.h"

namespace molfp::transformer {

using numerics::Shape;
using smiles::Vocab;

template <class T>
Tensor<T> positional_encoding(std::size_t length, std::size_t d_model) {
  if (d_model % 2 != 0)
    throw Error("transformer.config", "positional encoding needs an even "
                                      "d_model, got "
                                          + std::to_string(d_model));
  Tensor<T> pe({ length, d_model });
  for (std::size_t p = 0; p < length; ++p) {
    for (std::size_t i = 0; i < d_model / 2; ++i) {
      const double angle =
          static_cast<double>(p)
          / std::pow(10000.0, static_cast<double>(2 * i)
                                  / static_cast<double>(d_model));
      pe.at(p, 2 * i) = static_cast<T>(std::sin(angle));
      pe.at(p, 2 * i + 1) = static_cast<T>(std::cos(angle));
    }
  }
  return pe;
}

template <class T>
TransformerModel<T>::TransformerModel(ModelConfig config, std::uint64_t seed)
    : config_(config) {
  config_.validate();
  config_.d_ff = config_.ff_dim();
  const std::size_t d = config_.d_model, ff = config_.ff_dim();

  embedding = add("embedding", { config_.vocab_size, d });
  for (std::size_t l = 0; l < config_.n_layers; ++l) {
    const std::string pre = "encoder." + std::to_string(l) + ".";
    EncoderLayer layer;
    layer.self_attn = add_attention(pre + "self_attn");
    layer.norm1 = add_norm(pre + "norm1");
    layer.ff1 = add_linear(pre + "ff1", d, ff);
    layer.ff2 = add_linear(pre + "ff2", ff, d);
    layer.norm2 = add_norm(pre + "norm2");
    encoder.push_back(layer);
  }
  for (std::size_t l = 0; l < config_.n_layers; ++l) {
    const std::string pre = "decoder." + std::to_string(l) + ".";
    DecoderLayer layer;
    layer.self_attn = add_attention(pre + "self_attn");
    layer.norm1 = add_norm(pre + "norm1");
    layer.cross_attn = add_attention(pre + "cross_attn");
    layer.norm2 = add_norm(pre + "norm2");
    layer.ff1 = add_linear(pre + "ff1", d, ff);
    layer.ff2 = add_linear(pre + "ff2", ff, d);
    layer.norm3 = add_norm(pre + "norm3");
    decoder.push_back(layer);
  }
  output = add_linear("output", d, config_.vocab_size);

  Rng rng(seed);
  for (Parameter<T> &p: params_) {
    const std::string &name = p.name;
    if (name == "embedding") {
      const double sd = 1.0 / std::sqrt(static_cast<double>(d));
      for (T &v: p.value.values())
        v = static_cast<T>(sd * rng.normal());
    } else if (name.ends_with(".weight")) {
      const double limit = std::sqrt(
          6.0 / static_cast<double>(p.value.dim(0) + p.value.dim(1)));
      for (T &v: p.value.values())
        v = static_cast<T>(rng.uniform(-limit, limit));
    } else if (name.ends_with(".gain")) {
      p.value.fill(T(1));
    }
  }
  pe_ = positional_encoding<T>(config_.max_seq_len, d);
}

template <class T>
std::size_t TransformerModel<T>::add(std::string name, Shape shape) {
  params_.emplace_back(std::move(name), Tensor<T>(std::move(shape)));
  return params_.size() - 1;
}

template <class T>
typename TransformerModel<T>::Linear TransformerModel<T>::add_linear(
    const std::string &name, std::size_t in, std::size_t out) {
  const std::size_t w = add(name + ".weight", { in, out });
  const std::size_t b = add(name + ".bias", { out });
  return { w, b };
}

template <class T>
typename TransformerModel<T>::Norm TransformerModel<T>::add_norm(
    const std::string &name) {
  const std::size_t g = add(name + ".gain", { config_.d_model });
  const std::size_t b = add(name + ".bias", { config_.d_model });
  return { g, b };
}

template <class T>
typename TransformerModel<T>::Attention TransformerModel<T>::add_attention(
    const std::string &name) {
  const std::size_t d = config_.d_model;
  Attention a;
  a.q = add_linear(name + ".q", d, d);
  a.k = add_linear(name + ".k", d, d);
  a.v = add_linear(name + ".v", d, d);
  a.o = add_linear(name + ".o", d, d);
  return a;
}

template <class T>
std::vector<Parameter<T> *> TransformerModel<T>::parameter_pointers() {
  std::vector<Parameter<T> *> out;
  for (Parameter<T> &p: params_)
    out.push_back(&p);
  return out;
}

template <class T>
std::size_t TransformerModel<T>::parameter_count() const {
  std::size_t n = 0;
  for (const Parameter<T> &p: params_)
    n += p.value.numel();
  return n;
}

template <class T>
template <class U>
TransformerModel<U> TransformerModel<T>::cast() const {
  TransformerModel<U> out(config_, 0);
  for (std::size_t i = 0; i < params_.size(); ++i)
    out.param(i).value = params_[i].value.template cast<U>();
  return out;
}

TokenBatch pad_batch(std::span<const std::vector<TokenId>> sequences,
                     std::size_t min_len) {
  TokenBatch out;
  out.batch = sequences.size();
  out.len = min_len;
  for (const auto &s: sequences)
    out.len = std::max(out.len, s.size());
  out.ids.assign(out.batch * out.len, Vocab::kPad);
  for (std::size_t b = 0; b < out.batch; ++b)
    std::copy(sequences[b].begin(), sequences[b].end(),
              out.ids.begin() + static_cast<std::ptrdiff_t>(b * out.len));
  return out;
}

Mask attention_mask(const TokenBatch &keys, std::size_t lq, bool causal) {
  Mask mask({ keys.batch, lq, keys.len });
  for (std::size_t b = 0; b < keys.batch; ++b) {
    for (std::size_t i = 0; i < lq; ++i) {
      std::uint8_t *row = mask.data() + (b * lq + i) * keys.len;
      for (std::size_t j = 0; j < keys.len; ++j)
        row[j] = keys.is_pad(b, j) || (causal && j > i);
    }
  }
  return mask;
}

namespace {
template <class T>
Var<T> bind(const Pass<T> &pass, std::size_t index) {
  const Parameter<T> &p = pass.model.param(index);
  if (pass.track_gradients)
    return pass.tape.parameter(const_cast<Parameter<T> &>(p));
  return pass.tape.view(p.value);
}

template <class T>
Var<T> apply(const Pass<T> &pass, const typename TransformerModel<T>::Linear &l,
             Var<T> x) {
  return numerics::linear(x, bind(pass, l.weight), bind(pass, l.bias));
}

template <class T>
Var<T> normalize(const Pass<T> &pass,
                 const typename TransformerModel<T>::Norm &n, Var<T> x) {
  return numerics::layer_norm(x, bind(pass, n.gain), bind(pass, n.bias));
}

template <class T>
Var<T> maybe_dropout(const Pass<T> &pass, Var<T> x) {
  if (pass.dropout_rng == nullptr)
    return x;
  return numerics::dropout(x, static_cast<T>(pass.model.config().dropout),
                           *pass.dropout_rng);
}

template <class T>
Var<T> feed_forward(const Pass<T> &pass,
                    const typename TransformerModel<T>::Linear &ff1,
                    const typename TransformerModel<T>::Linear &ff2,
                    Var<T> x) {
  return apply(pass, ff2, numerics::relu(apply(pass, ff1, x)));
}

// Scaled embeddings plus positions, [batch*len, d].
template <class T>
Var<T> embed(const Pass<T> &pass, const TokenBatch &tokens) {
  const ModelConfig &cfg = pass.model.config();
  if (tokens.len > cfg.max_seq_len)
    throw Error("transformer.too_long",
                "sequence of " + std::to_string(tokens.len)
                    + " tokens exceeds max_seq_len "
                    + std::to_string(cfg.max_seq_len));
  const std::size_t d = cfg.d_model;
  const Var<T> table = bind(pass, pass.model.embedding);
  Var<T> x = numerics::scale(
      numerics::embedding(table, std::span<const TokenId>(tokens.ids)),
      static_cast<T>(std::sqrt(static_cast<double>(d))));
  Tensor<T> pe({ tokens.batch * tokens.len, d });
  const Tensor<T> &table_pe = pass.model.positions();
  for (std::size_t b = 0; b < tokens.batch; ++b)
    std::copy(table_pe.data(), table_pe.data() + tokens.len * d,
              pe.data() + b * tokens.len * d);
  x = numerics::add(x, pass.tape.constant(std::move(pe)));
  return maybe_dropout(pass, x);
}
}  // namespace

template <class T>
Var<T> multi_head_attention(const Pass<T> &pass,
                            const typename TransformerModel<T>::Attention &p,
                            Var<T> q_in, Var<T> kv_in, std::size_t batch,
                            std::size_t lq, std::size_t lk, const Mask *mask,
                            Var<T> *weights) {
  const std::size_t heads = pass.model.config().n_heads;
  const auto q = numerics::split_heads(apply(pass, p.q, q_in), batch, lq,
                                       heads);
  const auto k = numerics::split_heads(apply(pass, p.k, kv_in), batch, lk,
                                       heads);
  const auto v = numerics::split_heads(apply(pass, p.v, kv_in), batch, lk,
                                       heads);
  const T inv_sqrt = static_cast<T>(
      1.0 / std::sqrt(static_cast<double>(pass.model.config().head_dim())));
  const auto probs = numerics::softmax_rows(
      numerics::scale(numerics::batched_matmul(q, k, true), inv_sqrt), mask);
  if (weights)
    *weights = probs;
  const auto mixed = numerics::merge_heads(
      numerics::batched_matmul(probs, v, false), batch, lq, heads);
  return apply(pass, p.o, mixed);
}

template <class T>
std::vector<Var<T>> encode(const Pass<T> &pass, const TokenBatch &src) {
  Var<T> x = embed(pass, src);
  const Mask mask = attention_mask(src, src.len, false);
  std::vector<Var<T>> outputs;
  for (const auto &layer: pass.model.encoder) {
    const auto attn = multi_head_attention(pass, layer.self_attn, x, x,
                                           src.batch, src.len, src.len, &mask);
    x = normalize(pass, layer.norm1,
                  numerics::add(x, maybe_dropout(pass, attn)));
    const auto ff = feed_forward(pass, layer.ff1, layer.ff2, x);
    x = normalize(pass, layer.norm2, numerics::add(x, maybe_dropout(pass, ff)));
    outputs.push_back(x);
  }
  return outputs;
}

template <class T>
Var<T> decode(const Pass<T> &pass, const TokenBatch &tgt,
              const TokenBatch &src, Var<T> memory) {
  if (tgt.batch != src.batch)
    throw numerics::ShapeError("decode: target batch "
                               + std::to_string(tgt.batch)
                               + " differs from source batch "
                               + std::to_string(src.batch));
  Var<T> x = embed(pass, tgt);
  const Mask self_mask = attention_mask(tgt, tgt.len, true);
  const Mask cross_mask = attention_mask(src, tgt.len, false);
  for (const auto &layer: pass.model.decoder) {
    const auto self = multi_head_attention(pass, layer.self_attn, x, x,
                                           tgt.batch, tgt.len, tgt.len,
                                           &self_mask);
    x = normalize(pass, layer.norm1,
                  numerics::add(x, maybe_dropout(pass, self)));
    const auto cross = multi_head_attention(pass, layer.cross_attn, x, memory,
                                            tgt.batch, tgt.len, src.len,
                                            &cross_mask);
    x = normalize(pass, layer.norm2,
                  numerics::add(x, maybe_dropout(pass, cross)));
    const auto ff = feed_forward(pass, layer.ff1, layer.ff2, x);
    x = normalize(pass, layer.norm3, numerics::add(x, maybe_dropout(pass, ff)));
  }
  return apply(pass, pass.model.output, x);
}

AutoencoderBatch make_autoencoder_batch(
    std::span<const std::vector<TokenId>> sequences) {
  std::vector<std::vector<TokenId>> src, tgt_in, tgt_out;
  for (const auto &s: sequences) {
    std::vector<TokenId> enc { Vocab::kBos }, dec_in { Vocab::kBos };
    enc.insert(enc.end(), s.begin(), s.end());
    enc.push_back(Vocab::kEos);
    dec_in.insert(dec_in.end(), s.begin(), s.end());
    std::vector<TokenId> dec_out(s.begin(), s.end());
    dec_out.push_back(Vocab::kEos);
    src.push_back(std::move(enc));
    tgt_in.push_back(std::move(dec_in));
    tgt_out.push_back(std::move(dec_out));
  }
  AutoencoderBatch out;
  out.src = pad_batch(src);
  out.tgt_in = pad_batch(tgt_in);
  const TokenBatch targets = pad_batch(tgt_out, out.tgt_in.len);
  out.tgt_out = targets.ids;
  out.tgt_pad.resize(out.tgt_out.size());
  for (std::size_t i = 0; i < out.tgt_out.size(); ++i) {
    out.tgt_pad[i] = out.tgt_out[i] == Vocab::kPad;
    out.target_tokens += out.tgt_pad[i] ? 0 : 1;
  }
  return out;
}

template <class T>
Var<T> autoencoder_loss(const Pass<T> &pass, const AutoencoderBatch &batch) {
  const auto layers = encode(pass, batch.src);
  const auto logits = decode(pass, batch.tgt_in, batch.src, layers.back());
  return numerics::cross_entropy(logits,
                                 std::span<const TokenId>(batch.tgt_out),
                                 std::span<const std::uint8_t>(batch.tgt_pad));
}

#define MOLFP_INSTANTIATE_MODEL(T)                                             \
  template class TransformerModel<T>;                                          \
  template Tensor<T> positional_encoding<T>(std::size_t, std::size_t);         \
  template Var<T> multi_head_attention<T>(                                     \
      const Pass<T> &, const TransformerModel<T>::Attention &, Var<T>, Var<T>, \
      std::size_t, std::size_t, std::size_t, const Mask *, Var<T> *);          \
  template std::vector<Var<T>> encode<T>(const Pass<T> &, const TokenBatch &); \
  template Var<T> decode<T>(const Pass<T> &, const TokenBatch &,               \
                            const TokenBatch &, Var<T>);                       \
  template Var<T> autoencoder_loss<T>(const Pass<T> &,                         \
                                      const AutoencoderBatch &);

MOLFP_INSTANTIATE_MODEL(float)
MOLFP_INSTANTIATE_MODEL(double)

#undef MOLFP_INSTANTIATE_MODEL

template TransformerModel<double> TransformerModel<float>::cast<double>() const;
template TransformerModel<float> TransformerModel<double>::cast<float>() const;
template TransformerModel<float> TransformerModel<float>::cast<float>() const;
template TransformerModel<double> TransformerModel<double>::cast<double>()
    const;

}  // namespace molfp::transformer
