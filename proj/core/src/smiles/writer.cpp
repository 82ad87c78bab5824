//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/writer.h"

#include <array>
#include <cctype>
#include <string>

#include "molfp/error.h"
#include "molfp/smiles/elements.h"

namespace molfp::smiles {
namespace {
constexpr int kMaxRingLabel = 99;

struct Child {
  int atom;
  int bond;
};

class Writer {
public:
  Writer(const MolGraph &graph, const NeighborOrder &order)
      : graph_(graph), order_(order), visited_(graph.num_atoms(), false),
        ring_bond_(graph.num_bonds(), false),
        ring_label_(graph.num_bonds(), 0), children_(graph.num_atoms()),
        ring_open_(graph.num_atoms()), ring_close_(graph.num_atoms()) { }

  std::string run(int root) {
    plan(root, -1);
    write(root, -1);
    return out_;
  }

private:
  // Pass 1: spanning tree and ring-closure bonds.
  void plan(int atom, int parent_bond) {
    visited_[atom] = true;
    for (int nb: order_[atom]) {
      const int bond = graph_.find_bond(atom, nb);
      if (bond < 0)
        throw Error("smiles.bad_order", "neighbor order names a non-neighbor");
      if (bond == parent_bond)
        continue;
      if (!visited_[nb]) {
        children_[atom].push_back({ nb, bond });
        plan(nb, bond);
      } else if (!ring_bond_[bond] && !is_tree_bond(nb, bond)) {
        ring_bond_[bond] = true;
        ring_open_[nb].push_back(bond);
        ring_close_[atom].push_back(bond);
      }
    }
  }

  bool is_tree_bond(int atom, int bond) const {
    for (const Child &c: children_[atom]) {
      if (c.bond == bond)
        return true;
    }
    return false;
  }

  // Pass 2: emit text.
  void write(int atom, int incoming_bond) {
    if (incoming_bond >= 0)
      out_ += bond_symbol(incoming_bond);
    out_ += atom_symbol(atom);

    std::vector<int> released;
    for (int bond: ring_close_[atom]) {
      out_ += label_text(ring_label_[bond]);
      released.push_back(ring_label_[bond]);
    }
    for (int bond: ring_open_[atom]) {
      const int label = allocate_label();
      ring_label_[bond] = label;
      out_ += bond_symbol(bond);
      out_ += label_text(label);
    }
    for (int label: released)
      in_use_[label] = false;

    const auto &kids = children_[atom];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool last = i + 1 == kids.size();
      if (!last)
        out_ += '(';
      write(kids[i].atom, kids[i].bond);
      if (!last)
        out_ += ')';
    }
  }

  int allocate_label() {
    for (int label = 1; label <= kMaxRingLabel; ++label) {
      if (!in_use_[label]) {
        in_use_[label] = true;
        return label;
      }
    }
    throw Error("smiles.too_many_rings", "more than 99 open ring closures");
  }

  static std::string label_text(int label) {
    if (label < 10)
      return std::string(1, static_cast<char>('0' + label));
    return "%" + std::to_string(label);
  }

  std::string bond_symbol(int bond_index) const {
    const Bond &bond = graph_.bond(bond_index);
    const bool both_aromatic = graph_.atom(bond.begin).aromatic
                               && graph_.atom(bond.end).aromatic;
    switch (bond.order) {
    case BondOrder::kSingle:
      return both_aromatic ? "-" : "";
    case BondOrder::kDouble:
      return "=";
    case BondOrder::kTriple:
      return "#";
    case BondOrder::kAromatic:
      return both_aromatic ? "" : ":";
    }
    return "";
  }

  std::string atom_symbol(int index) const {
    const Atom &atom = graph_.atom(index);
    std::string symbol(element_symbol(atom.atomic_number));
    if (atom.aromatic)
      symbol[0] = static_cast<char>(std::tolower(symbol[0]));
    if (!atom.bracket())
      return symbol;

    std::string text = "[";
    if (atom.isotope)
      text += std::to_string(*atom.isotope);
    text += symbol;
    const int h = *atom.explicit_h;
    if (h > 0) {
      text += 'H';
      if (h > 1)
        text += std::to_string(h);
    }
    if (atom.formal_charge != 0) {
      text += atom.formal_charge > 0 ? '+' : '-';
      const int mag = atom.formal_charge > 0 ? atom.formal_charge
                                             : -atom.formal_charge;
      if (mag > 1)
        text += std::to_string(mag);
    }
    text += ']';
    return text;
  }

  const MolGraph &graph_;
  const NeighborOrder &order_;
  std::vector<bool> visited_;
  std::vector<bool> ring_bond_;
  std::vector<int> ring_label_;
  std::vector<std::vector<Child>> children_;
  std::vector<std::vector<int>> ring_open_;
  std::vector<std::vector<int>> ring_close_;
  std::array<bool, kMaxRingLabel + 1> in_use_ {};
  std::string out_;
};
}  // namespace

NeighborOrder default_neighbor_order(const MolGraph &graph) {
  NeighborOrder order(graph.num_atoms());
  for (int a = 0; a < graph.num_atoms(); ++a) {
    for (const Neighbor &nb: graph.neighbors(a))
      order[a].push_back(nb.atom);
  }
  return order;
}

std::string serialize(const MolGraph &graph, int root,
                      const NeighborOrder &order) {
  if (root < 0 || root >= graph.num_atoms())
    throw Error("smiles.bad_root", "root atom out of range");
  if (static_cast<int>(order.size()) != graph.num_atoms())
    throw Error("smiles.bad_order", "neighbor order has wrong atom count");
  return Writer(graph, order).run(root);
}

std::string enumerate_random(const MolGraph &graph, Rng &rng) {
  NeighborOrder order = default_neighbor_order(graph);
  const int root = static_cast<int>(rng.uniform_index(graph.num_atoms()));
  for (auto &nbrs: order)
    rng.shuffle(std::span<int>(nbrs));
  return serialize(graph, root, order);
}

}  // namespace molfp::smiles
