//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/tokenizer.h"

#include <cctype>

#include "molfp/smiles/elements.h"

namespace molfp::smiles {
namespace {
bool is_aromatic_letter(char c) {
  switch (c) {
  case 'b':
  case 'c':
  case 'n':
  case 'o':
  case 'p':
  case 's':
    return true;
  default:
    return false;
  }
}

bool is_single_char_symbol(char c) {
  switch (c) {
  case '-':
  case '=':
  case '#':
  case '$':
  case ':':
  case '/':
  case '\\':
  case '(':
  case ')':
  case '.':
  case '*':
    return true;
  default:
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  }
}

std::string error_kind_tag(SmilesErrorKind kind) {
  return "smiles." + std::string(to_string(kind));
}
}  // namespace

std::string_view to_string(SmilesErrorKind kind) noexcept {
  switch (kind) {
  case SmilesErrorKind::kEmpty:
    return "empty";
  case SmilesErrorKind::kIllegalCharacter:
    return "illegal_character";
  case SmilesErrorKind::kUnclosedBracket:
    return "unclosed_bracket";
  case SmilesErrorKind::kBadBracketAtom:
    return "bad_bracket_atom";
  case SmilesErrorKind::kUnmatchedParenthesis:
    return "unmatched_parenthesis";
  case SmilesErrorKind::kUnmatchedRingClosure:
    return "unmatched_ring_closure";
  case SmilesErrorKind::kBadRingClosure:
    return "bad_ring_closure";
  case SmilesErrorKind::kBadBond:
    return "bad_bond";
  case SmilesErrorKind::kValenceViolation:
    return "valence_violation";
  case SmilesErrorKind::kMultiFragment:
    return "multi_fragment";
  case SmilesErrorKind::kSyntax:
    return "syntax";
  }
  return "unknown";
}

SmilesError::SmilesError(SmilesErrorKind kind, std::size_t position,
                         const std::string &message)
    : Error(error_kind_tag(kind),
            message + " (at offset " + std::to_string(position) + ")"),
      code_(kind), position_(position) { }

std::vector<Token> tokenize(std::string_view smiles) {
  if (smiles.empty())
    throw SmilesError(SmilesErrorKind::kEmpty, 0, "empty SMILES");

  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < smiles.size()) {
    const char c = smiles[i];
    std::size_t len = 0;

    if (c == '[') {
      std::size_t close = smiles.find(']', i + 1);
      std::size_t nested = smiles.find('[', i + 1);
      if (close == std::string_view::npos || nested < close)
        throw SmilesError(SmilesErrorKind::kUnclosedBracket, i,
                          "unclosed bracket expression");
      len = close - i + 1;
    } else if (c == '%') {
      if (i + 2 >= smiles.size()
          || !std::isdigit(static_cast<unsigned char>(smiles[i + 1]))
          || !std::isdigit(static_cast<unsigned char>(smiles[i + 2])))
        throw SmilesError(SmilesErrorKind::kIllegalCharacter, i,
                          "'%' must be followed by two digits");
      len = 3;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      if (i + 1 < smiles.size()
          && std::islower(static_cast<unsigned char>(smiles[i + 1]))) {
        const char next = smiles[i + 1];
        const std::string_view pair = smiles.substr(i, 2);
        const bool halogen = pair == "Cl" || pair == "Br";
        if (halogen || (!is_aromatic_letter(next) && atomic_number(pair) != 0))
          len = 2;
      }
      if (len == 0) {
        if (atomic_number(smiles.substr(i, 1)) == 0)
          throw SmilesError(SmilesErrorKind::kIllegalCharacter, i,
                            std::string("illegal character '") + c + "'");
        len = 1;
      }
    } else if (is_aromatic_letter(c) || is_single_char_symbol(c)) {
      len = 1;
    } else {
      throw SmilesError(SmilesErrorKind::kIllegalCharacter, i,
                        std::string("illegal character '") + c + "'");
    }

    tokens.push_back(Token { std::string(smiles.substr(i, len)) });
    i += len;
  }
  return tokens;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (const Token &tok: tokens)
    out += tok.text;
  return out;
}

}  // namespace molfp::smiles
