//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_MOL_GRAPH_H_
#define MOLFP_SMILES_MOL_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace molfp::smiles {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  int atomic_number = 0;
  bool aromatic = false;
  int formal_charge = 0;
  // Set only for bracket atoms; organic-subset atoms derive their hydrogen
  // count from the default valence table.
  std::optional<int> explicit_h;
  std::optional<int> isotope;

  bool bracket() const noexcept { return explicit_h.has_value(); }

  bool operator==(const Atom &) const = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const noexcept { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

// Connected molecular graph. Immutable once constructed; the constructor
// validates endpoints, rejects duplicate bonds and disconnected input, and
// precomputes adjacency, ring membership and hydrogen counts.
class MolGraph {
public:
  MolGraph(std::vector<Atom> atoms, std::vector<Bond> bonds,
           bool stereo_stripped = false);

  int num_atoms() const noexcept { return static_cast<int>(atoms_.size()); }
  int num_bonds() const noexcept { return static_cast<int>(bonds_.size()); }

  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::span<const Bond> bonds() const noexcept { return bonds_; }

  // Neighbors in bond-insertion order.
  std::span<const Neighbor> neighbors(int atom) const {
    return adjacency_[atom];
  }
  int degree(int atom) const {
    return static_cast<int>(adjacency_[atom].size());
  }

  // Index of the bond joining a and b, or -1.
  int find_bond(int a, int b) const;

  bool atom_in_ring(int atom) const { return atom_in_ring_[atom]; }
  bool bond_in_ring(int bond) const { return bond_in_ring_[bond]; }

  // Total hydrogen count: explicit for bracket atoms, implicit otherwise.
  int hydrogen_count(int atom) const { return hydrogens_[atom]; }

  // True when stereo markers (/ \ @ @@) were present in the parsed source.
  bool stereo_stripped() const noexcept { return stereo_stripped_; }

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<bool> atom_in_ring_;
  std::vector<bool> bond_in_ring_;
  std::vector<int> hydrogens_;
  bool stereo_stripped_;
};

// Hydrogens attached to `atom_index`. Organic-subset atoms: the smallest
// allowed valence not below the bond-order sum (aromatic bonds count 1.5,
// total rounded), minus that sum, clamped at zero; aromatic atoms always use
// their default valence. Bracket atoms report their explicit count.
int implicit_hydrogens(int atom_index, const MolGraph &graph);

// Bond-order sum with aromatic bonds counted as 1.5, rounded half up.
int bond_order_sum(int atom_index, const MolGraph &graph);

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_MOL_GRAPH_H_
