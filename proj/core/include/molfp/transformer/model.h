//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TRANSFORMER_MODEL_H_
#define MOLFP_TRANSFORMER_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <vector>

#include "molfp/numerics/ops.h"
#include "molfp/numerics/tape.h"
#include "molfp/numerics/tensor.h"
#include "molfp/random.h"
#include "molfp/smiles/vocab.h"
#include "molfp/transformer/config.h"

namespace molfp::transformer {

using numerics::Mask;
using numerics::Parameter;
using numerics::Tape;
using numerics::Tensor;
using numerics::Var;
using smiles::TokenId;

// PE[p,2i] = sin(p / 10000^(2i/d)), PE[p,2i+1] = cos(p / 10000^(2i/d)).
// Throws Error("transformer.config") for odd d_model.
template <class T>
Tensor<T> positional_encoding(std::size_t length, std::size_t d_model);

// Encoder-decoder weights. Parameters live in one ordered list; the layout
// structs below hold indices into it, so copies are self-contained.
template <class T>
class TransformerModel {
public:
  struct Linear {
    std::size_t weight, bias;
  };
  struct Norm {
    std::size_t gain, bias;
  };
  struct Attention {
    Linear q, k, v, o;
  };
  struct EncoderLayer {
    Attention self_attn;
    Norm norm1;
    Linear ff1, ff2;
    Norm norm2;
  };
  struct DecoderLayer {
    Attention self_attn;
    Norm norm1;
    Attention cross_attn;
    Norm norm2;
    Linear ff1, ff2;
    Norm norm3;
  };

  // Xavier-uniform weights, zero biases, unit gains, N(0, 1/d) embeddings.
  TransformerModel(ModelConfig config, std::uint64_t seed);

  const ModelConfig &config() const noexcept { return config_; }

  std::deque<Parameter<T>> &parameters() noexcept { return params_; }
  const std::deque<Parameter<T>> &parameters() const noexcept {
    return params_;
  }
  std::vector<Parameter<T> *> parameter_pointers();
  std::size_t parameter_count() const;

  Parameter<T> &param(std::size_t index) { return params_[index]; }
  const Parameter<T> &param(std::size_t index) const { return params_[index]; }

  // Same weights in another precision.
  template <class U>
  TransformerModel<U> cast() const;

  const Tensor<T> &positions() const noexcept { return pe_; }

  std::size_t embedding = 0;
  std::vector<EncoderLayer> encoder;
  std::vector<DecoderLayer> decoder;
  Linear output {};

private:
  std::size_t add(std::string name, numerics::Shape shape);
  Linear add_linear(const std::string &name, std::size_t in, std::size_t out);
  Norm add_norm(const std::string &name);
  Attention add_attention(const std::string &name);

  ModelConfig config_;
  std::deque<Parameter<T>> params_;
  Tensor<T> pe_;
};

// Right-padded id matrix [batch, len]. Padding is given by `pad` when it is
// non-empty, otherwise by PAD ids.
struct TokenBatch {
  std::size_t batch = 0;
  std::size_t len = 0;
  std::vector<TokenId> ids;
  std::vector<std::uint8_t> pad;

  bool is_pad(std::size_t b, std::size_t t) const {
    return pad.empty() ? ids[b * len + t] == smiles::Vocab::kPad
                       : pad[b * len + t] != 0;
  }
};

// Pads to the longest sequence (or to `min_len` if larger).
TokenBatch pad_batch(std::span<const std::vector<TokenId>> sequences,
                     std::size_t min_len = 0);

// [batch, lq, lk]: key position j blocked where keys.is_pad(b, j); with
// `causal`, also j > i.
Mask attention_mask(const TokenBatch &keys, std::size_t lq, bool causal);

// One forward computation on a tape.
template <class T>
struct Pass {
  Tape<T> &tape;
  const TransformerModel<T> &model;
  // Binds parameters so that backward reaches them; otherwise weights are
  // read in place and receive no gradient.
  bool track_gradients = false;
  // Null disables dropout.
  Rng *dropout_rng = nullptr;
};

// Multi-head scaled dot-product attention of q_in [batch*lq, d] over
// kv_in [batch*lk, d]. When `weights` is non-null it receives the attention
// probabilities [heads*batch, lq, lk] (head-major).
template <class T>
Var<T> multi_head_attention(const Pass<T> &pass,
                            const typename TransformerModel<T>::Attention &p,
                            Var<T> q_in, Var<T> kv_in, std::size_t batch,
                            std::size_t lq, std::size_t lk, const Mask *mask,
                            Var<T> *weights = nullptr);

// Every encoder layer's output [batch*len, d], first layer first.
// Throws Error("transformer.too_long") past max_seq_len.
template <class T>
std::vector<Var<T>> encode(const Pass<T> &pass, const TokenBatch &src);

// Teacher-forced logits [batch*len, vocab] for decoder input `tgt`.
template <class T>
Var<T> decode(const Pass<T> &pass, const TokenBatch &tgt,
              const TokenBatch &src, Var<T> memory);

// Autoencoding batch: encoder reads [BOS x EOS], decoder reads [BOS x] and
// predicts [x EOS].
struct AutoencoderBatch {
  TokenBatch src;
  TokenBatch tgt_in;
  std::vector<TokenId> tgt_out;
  std::vector<std::uint8_t> tgt_pad;
  std::size_t target_tokens = 0;
};

AutoencoderBatch make_autoencoder_batch(
    std::span<const std::vector<TokenId>> sequences);

// Mean cross-entropy over non-PAD target positions.
template <class T>
Var<T> autoencoder_loss(const Pass<T> &pass, const AutoencoderBatch &batch);

extern template class TransformerModel<float>;
extern template class TransformerModel<double>;

}  // namespace molfp::transformer

#endif  // MOLFP_TRANSFORMER_MODEL_H_
