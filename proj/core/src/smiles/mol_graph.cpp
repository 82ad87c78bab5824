//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/mol_graph.h"

#include <algorithm>
#include <string>
#include <utility>

#include "molfp/error.h"
#include "molfp/smiles/elements.h"

namespace molfp::smiles {
namespace {
// Bridge detection (iterative Tarjan). A bond lies on a ring iff it is not a
// bridge; an atom is a ring atom iff one of its bonds is.
std::vector<bool> find_ring_bonds(
    int num_atoms, int num_bonds,
    const std::vector<std::vector<Neighbor>> &adj) {
  std::vector<bool> in_ring(num_bonds, true);
  std::vector<int> disc(num_atoms, -1), low(num_atoms, 0);
  int timer = 0;

  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < num_atoms; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next < adj[f.atom].size()) {
        const Neighbor nb = adj[f.atom][f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = timer++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom])
          in_ring[done.parent_bond] = false;
      }
    }
  }
  return in_ring;
}

int compute_hydrogens(const Atom &atom, int order_sum) {
  if (atom.explicit_h)
    return *atom.explicit_h;
  const auto valences = allowed_valences(atom.atomic_number);
  if (valences.empty())
    return 0;
  if (atom.aromatic)
    return std::max(0, valences.front() - order_sum);
  for (int v: valences) {
    if (v >= order_sum)
      return v - order_sum;
  }
  return 0;
}
}  // namespace

MolGraph::MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds,
                   bool stereo_stripped)
    : atoms_(std::move(atoms)), bonds_(std::move(bonds)),
      adjacency_(atoms_.size()), stereo_stripped_(stereo_stripped) {
  if (atoms_.empty())
    throw Error("graph.empty", "molecular graph has no atoms");

  const int n = num_atoms();
  for (int i = 0; i < n; ++i) {
    if (element_symbol(atoms_[i].atomic_number).empty())
      throw Error("graph.bad_element",
                  "atom " + std::to_string(i) + " has no valid element");
    if (atoms_[i].aromatic && !is_aromatizable(atoms_[i].atomic_number))
      throw Error("graph.bad_aromatic",
                  "element " + std::string(element_symbol(
                      atoms_[i].atomic_number))
                      + " cannot be aromatic");
  }

  for (int b = 0; b < num_bonds(); ++b) {
    const Bond &bond = bonds_[b];
    if (bond.begin < 0 || bond.begin >= n || bond.end < 0 || bond.end >= n
        || bond.begin == bond.end)
      throw Error("graph.bad_bond",
                  "bond " + std::to_string(b) + " has invalid endpoints");
    if (find_bond(bond.begin, bond.end) >= 0)
      throw Error("graph.duplicate_bond",
                  "atoms " + std::to_string(bond.begin) + " and "
                      + std::to_string(bond.end) + " are bonded twice");
    adjacency_[bond.begin].push_back({ bond.end, b });
    adjacency_[bond.end].push_back({ bond.begin, b });
  }

  // Connectivity.
  std::vector<bool> seen(n, false);
  std::vector<int> queue { 0 };
  seen[0] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Neighbor &nb: adjacency_[queue[head]]) {
      if (!seen[nb.atom]) {
        seen[nb.atom] = true;
        queue.push_back(nb.atom);
      }
    }
  }
  if (static_cast<int>(queue.size()) != n)
    throw Error("graph.disconnected", "molecular graph is not connected");

  bond_in_ring_ = find_ring_bonds(n, num_bonds(), adjacency_);
  atom_in_ring_.assign(n, false);
  for (int b = 0; b < num_bonds(); ++b) {
    if (bond_in_ring_[b]) {
      atom_in_ring_[bonds_[b].begin] = true;
      atom_in_ring_[bonds_[b].end] = true;
    }
  }

  hydrogens_.resize(n);
  for (int i = 0; i < n; ++i)
    hydrogens_[i] = compute_hydrogens(atoms_[i], bond_order_sum(i, *this));
}

int MolGraph::find_bond(int a, int b) const {
  for (const Neighbor &nb: adjacency_[a]) {
    if (nb.atom == b)
      return nb.bond;
  }
  return -1;
}

int bond_order_sum(int atom_index, const MolGraph &graph) {
  int twice = 0;
  for (const Neighbor &nb: graph.neighbors(atom_index)) {
    switch (graph.bond(nb.bond).order) {
    case BondOrder::kSingle:
      twice += 2;
      break;
    case BondOrder::kDouble:
      twice += 4;
      break;
    case BondOrder::kTriple:
      twice += 6;
      break;
    case BondOrder::kAromatic:
      twice += 3;
      break;
    }
  }
  return (twice + 1) / 2;
}

int implicit_hydrogens(int atom_index, const MolGraph &graph) {
  return graph.hydrogen_count(atom_index);
}

}  // namespace molfp::smiles
