//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_FINGERPRINTS_ST_H_
#define MOLFP_FINGERPRINTS_ST_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molfp/numerics/tensor.h"
#include "molfp/smiles/vocab.h"
#include "molfp/transformer/model.h"

namespace molfp::fingerprints {

// Encoder-derived fingerprint of length 4*d_model, concatenating:
//   [0, d)    mean of the last layer over non-PAD positions (BOS/EOS included)
//   [d, 2d)   elementwise max of the last layer over the same positions
//   [2d, 3d)  last layer at position 0
//   [3d, 4d)  penultimate layer at position 0
// Throws Error("fingerprints.config") for models with fewer than two encoder
// layers and Error("transformer.too_long") past max_seq_len. Unknown tokens
// encode as UNK.
std::vector<float> st_fingerprint(
    const transformer::TransformerModel<float> &model,
    const smiles::Vocab &vocab, std::string_view smiles);

// Rows [n, 4*d_model] in input order. Bit-identical to calling
// st_fingerprint on each string.
numerics::Tensor<float> st_fingerprints(
    const transformer::TransformerModel<float> &model,
    const smiles::Vocab &vocab, std::span<const std::string> smiles,
    std::size_t batch_size = 32);

}  // namespace molfp::fingerprints

#endif  // MOLFP_FINGERPRINTS_ST_H_
