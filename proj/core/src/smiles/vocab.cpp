//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/vocab.h"

#include <algorithm>
#include <map>

#include "molfp/error.h"

namespace molfp::smiles {
namespace {
const std::vector<std::string> &reserved() {
  static const std::vector<std::string> kReserved = { "<pad>", "<unk>",
                                                      "<bos>", "<eos>" };
  return kReserved;
}
}  // namespace

Vocab::Vocab(): tokens_(reserved()) {
  for (TokenId i = 0; i < kNumReserved; ++i)
    index_.emplace(tokens_[i], i);
}

Vocab Vocab::build(std::span<const std::vector<Token>> sequences) {
  std::map<std::string, std::size_t> counts;
  for (const auto &seq: sequences) {
    for (const Token &tok: seq)
      ++counts[tok.text];
  }
  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(),
                                                          counts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto &x, const auto &y) {
                     return x.second > y.second;
                   });

  Vocab vocab;
  for (auto &[text, _]: sorted) {
    vocab.index_.emplace(text, static_cast<TokenId>(vocab.tokens_.size()));
    vocab.tokens_.push_back(text);
  }
  return vocab;
}

Vocab Vocab::from_tokens(std::vector<std::string> tokens) {
  const auto &res = reserved();
  if (tokens.size() < res.size()
      || !std::equal(res.begin(), res.end(), tokens.begin()))
    throw Error("vocab.malformed", "vocabulary must start with reserved tokens");
  Vocab vocab;
  for (std::size_t i = res.size(); i < tokens.size(); ++i) {
    if (!vocab.index_.emplace(tokens[i], static_cast<TokenId>(i)).second)
      throw Error("vocab.malformed", "duplicate vocabulary token '"
                                         + tokens[i] + "'");
    vocab.tokens_.push_back(tokens[i]);
  }
  return vocab;
}

TokenId Vocab::id(std::string_view token) const {
  auto it = index_.find(std::string(token));
  return it == index_.end() ? kUnk : it->second;
}

std::vector<TokenId> Vocab::encode(std::span<const Token> tokens) const {
  std::vector<TokenId> ids;
  ids.reserve(tokens.size());
  for (const Token &tok: tokens)
    ids.push_back(id(tok.text));
  return ids;
}

}  // namespace molfp::smiles
