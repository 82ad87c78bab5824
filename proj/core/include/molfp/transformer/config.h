//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_TRANSFORMER_CONFIG_H_
#define MOLFP_TRANSFORMER_CONFIG_H_

#include <cstddef>

namespace molfp::transformer {

struct ModelConfig {
  std::size_t n_layers = 4;
  std::size_t n_heads = 4;
  std::size_t d_model = 256;
  // 0 selects 4 * d_model.
  std::size_t d_ff = 0;
  // Includes BOS and EOS.
  std::size_t max_seq_len = 256;
  std::size_t vocab_size = 0;
  double dropout = 0.1;

  std::size_t ff_dim() const noexcept { return d_ff ? d_ff : 4 * d_model; }
  std::size_t head_dim() const noexcept { return d_model / n_heads; }

  // Throws Error("transformer.config") naming the first violated constraint.
  void validate() const;

  bool operator==(const ModelConfig &) const = default;
};

}  // namespace molfp::transformer

#endif  // MOLFP_TRANSFORMER_CONFIG_H_
