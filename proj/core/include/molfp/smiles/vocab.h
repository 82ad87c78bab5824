//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_VOCAB_H_
#define MOLFP_SMILES_VOCAB_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "molfp/smiles/tokenizer.h"

namespace molfp::smiles {

using TokenId = std::int32_t;

// Token <-> integer map. Ids 0..3 are reserved for <pad>, <unk>, <bos> and
// <eos>; regular tokens follow contiguously.
class Vocab {
public:
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kBos = 2;
  static constexpr TokenId kEos = 3;
  static constexpr int kNumReserved = 4;

  Vocab();

  // Builds from tokenized sequences: tokens ordered by descending frequency,
  // ties broken lexicographically.
  static Vocab build(std::span<const std::vector<Token>> sequences);

  // Reconstructs from the id-ordered token list (reserved entries included),
  // as stored in checkpoints. Throws Error on duplicates or a bad prefix.
  static Vocab from_tokens(std::vector<std::string> tokens);

  std::size_t size() const noexcept { return tokens_.size(); }

  // Unknown tokens map to kUnk.
  TokenId id(std::string_view token) const;
  const std::string &token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string> &tokens() const noexcept { return tokens_; }

  // Token ids without BOS/EOS.
  std::vector<TokenId> encode(std::span<const Token> tokens) const;

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_VOCAB_H_
