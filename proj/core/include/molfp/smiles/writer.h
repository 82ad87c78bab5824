//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_WRITER_H_
#define MOLFP_SMILES_WRITER_H_

#include <string>
#include <vector>

#include "molfp/random.h"
#include "molfp/smiles/mol_graph.h"

namespace molfp::smiles {

// Per-atom visiting preference: order[a] is a permutation of the neighbor atom
// indices of a. The depth-first writer follows it both for choosing branches
// and for deciding which bonds become ring closures.
using NeighborOrder = std::vector<std::vector<int>>;

// Neighbors in bond-insertion order.
NeighborOrder default_neighbor_order(const MolGraph &graph);

// Writes a SMILES by depth-first traversal from `root`. Ring closures get the
// smallest free label (1-9, then %10-%99). The output reparses to a graph
// equal to `graph`; stereo is never written.
std::string serialize(const MolGraph &graph, int root,
                      const NeighborOrder &order);

inline std::string serialize(const MolGraph &graph, int root = 0) {
  return serialize(graph, root, default_neighbor_order(graph));
}

// Random SMILES for the same molecule: uniform root, independently shuffled
// neighbor order at every atom.
std::string enumerate_random(const MolGraph &graph, Rng &rng);

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_WRITER_H_
