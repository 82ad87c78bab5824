//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_TOKENIZER_H_
#define MOLFP_SMILES_TOKENIZER_H_

#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "molfp/error.h"

namespace molfp::smiles {

enum class SmilesErrorKind {
  kEmpty,
  kIllegalCharacter,
  kUnclosedBracket,
  kBadBracketAtom,
  kUnmatchedParenthesis,
  kUnmatchedRingClosure,
  kBadRingClosure,
  kBadBond,
  kValenceViolation,
  kMultiFragment,
  kSyntax,
};

std::string_view to_string(SmilesErrorKind kind) noexcept;

class SmilesError: public Error {
public:
  SmilesError(SmilesErrorKind kind, std::size_t position,
              const std::string &message);

  SmilesErrorKind code() const noexcept { return code_; }
  // Character offset into the input at which the problem was detected.
  std::size_t position() const noexcept { return position_; }

private:
  SmilesErrorKind code_;
  std::size_t position_;
};

// One SMILES symbol: an atom ("C", "Br", "[nH]"), a bond ("="), a branch
// parenthesis, or a ring-closure label ("1", "%12").
struct Token {
  std::string text;

  bool operator==(const Token &) const = default;
  auto operator<=>(const Token &) const = default;
};

inline std::ostream &operator<<(std::ostream &os, const Token &tok) {
  return os << tok.text;
}

// Splits `smiles` into symbols. Bracket expressions and %nn ring labels are
// kept whole; two-letter element symbols (Cl, Br, Si, ...) are single tokens
// unless the second letter is itself an aromatic atom ("Sc" is S + c).
//
// Throws SmilesError on an empty string, an unclosed bracket or a character
// that cannot start any token.
std::vector<Token> tokenize(std::string_view smiles);

// Exact concatenation of the token texts.
std::string detokenize(std::span<const Token> tokens);

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_TOKENIZER_H_
