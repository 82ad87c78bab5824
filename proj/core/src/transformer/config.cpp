//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/transformer/config.h"

#include <string>

#include "molfp/error.h"
#include "molfp/smiles/vocab.h"

namespace molfp::transformer {

void ModelConfig::validate() const {
  auto fail = [](const std::string &what) {
    throw Error("transformer.config", what);
  };
  if (n_layers < 1)
    fail("n_layers must be >= 1");
  if (n_heads < 1)
    fail("n_heads must be >= 1");
  if (d_model < 2 || d_model % 2 != 0)
    fail("d_model must be even and >= 2, got " + std::to_string(d_model));
  if (d_model % n_heads != 0)
    fail("d_model " + std::to_string(d_model) + " is not divisible by n_heads "
         + std::to_string(n_heads));
  if (max_seq_len < 3)
    fail("max_seq_len must be >= 3, got " + std::to_string(max_seq_len));
  if (vocab_size <= static_cast<std::size_t>(smiles::Vocab::kNumReserved))
    fail("vocab_size must exceed the reserved tokens, got "
         + std::to_string(vocab_size));
  if (!(dropout >= 0.0 && dropout < 1.0))
    fail("dropout must lie in [0, 1)");
}

}  // namespace molfp::transformer
