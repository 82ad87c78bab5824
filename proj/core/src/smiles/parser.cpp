//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/parser.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molfp/smiles/elements.h"

namespace molfp::smiles {
namespace {
struct PendingBond {
  BondOrder order;
  bool explicit_symbol;
};

struct RingOpening {
  int atom;
  std::optional<BondOrder> order;
};

bool is_digit(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

class Parser {
public:
  explicit Parser(std::span<const Token> tokens): tokens_(tokens) { }

  MolGraph run() {
    for (std::size_t t = 0; t < tokens_.size(); ++t) {
      pos_ = offsets_;
      const std::string &text = tokens_[t].text;
      offsets_ += text.size();
      handle(text);
      last_ = text;
    }

    if (!rings_.empty()) {
      throw SmilesError(SmilesErrorKind::kUnmatchedRingClosure, offsets_,
                        "ring closure " + std::to_string(rings_.begin()->first)
                            + " never closed");
    }
    if (!branches_.empty())
      throw SmilesError(SmilesErrorKind::kUnmatchedParenthesis, offsets_,
                        "unclosed branch");
    if (pending_)
      throw SmilesError(SmilesErrorKind::kSyntax, offsets_,
                        "bond symbol at end of input");
    if (atoms_.empty())
      throw SmilesError(SmilesErrorKind::kSyntax, 0, "no atoms");

    MolGraph graph(std::move(atoms_), std::move(bonds_), stereo_);
    check_valences(graph);
    return graph;
  }

private:
  void handle(const std::string &text) {
    const char c = text.front();
    if (c == '[') {
      add_atom(parse_bracket(text));
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      add_atom(organic_atom(text));
    } else if (c == '%' || is_digit(c)) {
      ring_label(c == '%' ? std::stoi(text.substr(1)) : c - '0');
    } else if (c == '(') {
      if (prev_ < 0 || pending_)
        throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                          "branch must follow an atom");
      branches_.push_back(prev_);
    } else if (c == ')') {
      if (branches_.empty())
        throw SmilesError(SmilesErrorKind::kUnmatchedParenthesis, pos_,
                          "unmatched ')'");
      if (pending_)
        throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                          "bond symbol before ')'");
      if (last_ == "(")
        throw SmilesError(SmilesErrorKind::kSyntax, pos_, "empty branch");
      prev_ = branches_.back();
      branches_.pop_back();
    } else if (c == '.') {
      throw SmilesError(SmilesErrorKind::kMultiFragment, pos_,
                        "multi-fragment SMILES are not supported");
    } else if (c == '*') {
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "wildcard atoms are not supported");
    } else {
      bond_symbol(c);
    }
  }

  void bond_symbol(char c) {
    if (prev_ < 0 || pending_)
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        std::string("unexpected bond symbol '") + c + "'");
    BondOrder order;
    switch (c) {
    case '-':
      order = BondOrder::kSingle;
      break;
    case '/':
    case '\\':
      order = BondOrder::kSingle;
      stereo_ = true;
      break;
    case '=':
      order = BondOrder::kDouble;
      break;
    case '#':
      order = BondOrder::kTriple;
      break;
    case ':':
      order = BondOrder::kAromatic;
      break;
    default:
      throw SmilesError(SmilesErrorKind::kBadBond, pos_,
                        std::string("unsupported bond '") + c + "'");
    }
    pending_ = PendingBond { order, true };
  }

  BondOrder implicit_order(int a, int b) const {
    return atoms_[a].aromatic && atoms_[b].aromatic ? BondOrder::kAromatic
                                                    : BondOrder::kSingle;
  }

  bool bonded(int a, int b) const {
    return std::any_of(bonds_.begin(), bonds_.end(), [&](const Bond &bond) {
      return (bond.begin == a && bond.end == b)
             || (bond.begin == b && bond.end == a);
    });
  }

  void add_atom(const Atom &atom) {
    const int idx = static_cast<int>(atoms_.size());
    atoms_.push_back(atom);
    if (prev_ >= 0) {
      const BondOrder order = pending_ ? pending_->order
                                       : implicit_order(prev_, idx);
      bonds_.push_back({ prev_, idx, order });
    } else if (pending_) {
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "bond symbol without a preceding atom");
    }
    pending_.reset();
    prev_ = idx;
  }

  void ring_label(int label) {
    if (prev_ < 0)
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "ring closure without a preceding atom");

    auto it = rings_.find(label);
    if (it == rings_.end()) {
      std::optional<BondOrder> order;
      if (pending_)
        order = pending_->order;
      rings_.emplace(label, RingOpening { prev_, order });
      pending_.reset();
      return;
    }

    const RingOpening open = it->second;
    rings_.erase(it);
    if (open.atom == prev_)
      throw SmilesError(SmilesErrorKind::kBadRingClosure, pos_,
                        "ring closure " + std::to_string(label)
                            + " bonds an atom to itself");
    if (bonded(open.atom, prev_))
      throw SmilesError(SmilesErrorKind::kBadRingClosure, pos_,
                        "ring closure " + std::to_string(label)
                            + " duplicates an existing bond");

    std::optional<BondOrder> order = open.order;
    if (pending_) {
      if (order && *order != pending_->order)
        throw SmilesError(SmilesErrorKind::kBadRingClosure, pos_,
                          "conflicting bond orders on ring closure "
                              + std::to_string(label));
      order = pending_->order;
    }
    bonds_.push_back(
        { open.atom, prev_, order.value_or(implicit_order(open.atom, prev_)) });
    pending_.reset();
  }

  Atom organic_atom(const std::string &text) {
    Atom atom;
    std::string symbol = text;
    if (std::islower(static_cast<unsigned char>(text.front()))) {
      atom.aromatic = true;
      symbol[0] = static_cast<char>(std::toupper(symbol[0]));
    }
    atom.atomic_number = atomic_number(symbol);
    if (!is_organic_subset(atom.atomic_number))
      throw SmilesError(SmilesErrorKind::kSyntax, pos_,
                        "element '" + text
                            + "' must be written in brackets");
    return atom;
  }

  Atom parse_bracket(const std::string &text) {
    // text = "[" ... "]"
    const std::string body = text.substr(1, text.size() - 2);
    std::size_t i = 0;
    auto fail = [&](const std::string &why) -> SmilesError {
      return SmilesError(SmilesErrorKind::kBadBracketAtom, pos_ + 1 + i,
                         "bad bracket atom '" + text + "': " + why);
    };

    Atom atom;
    if (i < body.size() && is_digit(body[i])) {
      int iso = 0;
      while (i < body.size() && is_digit(body[i]))
        iso = iso * 10 + (body[i++] - '0');
      atom.isotope = iso;
    }

    if (i >= body.size())
      throw fail("missing element");
    const char c = body[i];
    if (std::isupper(static_cast<unsigned char>(c))) {
      if (i + 1 < body.size()
          && std::islower(static_cast<unsigned char>(body[i + 1]))
          && atomic_number(body.substr(i, 2)) != 0) {
        atom.atomic_number = atomic_number(body.substr(i, 2));
        i += 2;
      } else {
        atom.atomic_number = atomic_number(body.substr(i, 1));
        i += 1;
      }
    } else if (std::islower(static_cast<unsigned char>(c))) {
      atom.aromatic = true;
      std::string two = body.substr(i, 2);
      if (two == "se" || two == "as") {
        two[0] = static_cast<char>(std::toupper(two[0]));
        atom.atomic_number = atomic_number(two);
        i += 2;
      } else {
        std::string one(1, static_cast<char>(std::toupper(c)));
        atom.atomic_number = atomic_number(one);
        if (!is_aromatizable(atom.atomic_number))
          throw fail("element cannot be aromatic");
        i += 1;
      }
    }
    if (atom.atomic_number == 0)
      throw fail("unknown element");

    // Chirality.
    if (i < body.size() && body[i] == '@') {
      stereo_ = true;
      ++i;
      if (i < body.size() && body[i] == '@') {
        ++i;
      } else {
        const std::string cls = body.substr(i, 2);
        if (cls == "TH" || cls == "AL" || cls == "SP" || cls == "TB"
            || cls == "OH") {
          i += 2;
          while (i < body.size() && is_digit(body[i]))
            ++i;
        }
      }
    }

    int h = 0;
    if (i < body.size() && body[i] == 'H') {
      ++i;
      h = 1;
      if (i < body.size() && is_digit(body[i])) {
        h = 0;
        while (i < body.size() && is_digit(body[i]))
          h = h * 10 + (body[i++] - '0');
      }
    }
    atom.explicit_h = h;

    if (i < body.size() && (body[i] == '+' || body[i] == '-')) {
      const char sign = body[i];
      const int unit = sign == '+' ? 1 : -1;
      ++i;
      if (i < body.size() && is_digit(body[i])) {
        int mag = 0;
        while (i < body.size() && is_digit(body[i]))
          mag = mag * 10 + (body[i++] - '0');
        atom.formal_charge = unit * mag;
      } else {
        int count = 1;
        while (i < body.size() && body[i] == sign) {
          ++count;
          ++i;
        }
        atom.formal_charge = unit * count;
      }
    }

    if (i < body.size() && body[i] == ':') {
      ++i;
      if (i >= body.size() || !is_digit(body[i]))
        throw fail("atom class must be numeric");
      while (i < body.size() && is_digit(body[i]))
        ++i;
    }

    if (i != body.size())
      throw fail("unexpected trailing characters");
    return atom;
  }

  void check_valences(const MolGraph &graph) const {
    for (int a = 0; a < graph.num_atoms(); ++a) {
      const Atom &atom = graph.atom(a);
      if (atom.bracket())
        continue;
      const auto valences = allowed_valences(atom.atomic_number);
      int sum = 0;
      if (atom.aromatic) {
        for (const Neighbor &nb: graph.neighbors(a)) {
          const BondOrder order = graph.bond(nb.bond).order;
          sum += order == BondOrder::kAromatic ? 1 : static_cast<int>(order);
        }
      } else {
        sum = bond_order_sum(a, graph);
      }
      if (sum > valences.back()) {
        throw SmilesError(
            SmilesErrorKind::kValenceViolation, 0,
            "atom " + std::to_string(a) + " ("
                + std::string(element_symbol(atom.atomic_number))
                + ") has bond-order sum " + std::to_string(sum)
                + ", maximum is " + std::to_string(valences.back()));
      }
    }
  }

  std::span<const Token> tokens_;
  std::size_t offsets_ = 0;
  std::size_t pos_ = 0;
  std::string last_;

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<int> branches_;
  std::map<int, RingOpening> rings_;
  std::optional<PendingBond> pending_;
  int prev_ = -1;
  bool stereo_ = false;
};
}  // namespace

MolGraph parse_tokens(std::span<const Token> tokens) {
  return Parser(tokens).run();
}

MolGraph parse(std::string_view smiles) {
  const std::vector<Token> tokens = tokenize(smiles);
  return parse_tokens(tokens);
}

}  // namespace molfp::smiles
