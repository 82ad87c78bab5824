//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_EQUIVALENCE_H_
#define MOLFP_SMILES_EQUIVALENCE_H_

#include "molfp/smiles/mol_graph.h"

namespace molfp::smiles {

// Graph isomorphism respecting element, aromaticity, formal charge, isotope
// label, hydrogen count and bond order. Neighborhood-invariant refinement
// rejects most non-isomorphic pairs; surviving pairs are confirmed by a
// backtracking search restricted to equally colored atoms.
bool graph_equal(const MolGraph &a, const MolGraph &b);

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_EQUIVALENCE_H_
