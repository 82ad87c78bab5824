//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_PARSER_H_
#define MOLFP_SMILES_PARSER_H_

#include <string_view>

#include "molfp/smiles/mol_graph.h"
#include "molfp/smiles/tokenizer.h"

namespace molfp::smiles {

// Parses a single-fragment SMILES into a graph. Atoms are numbered in order of
// appearance. Stereo markers are dropped and reported via
// MolGraph::stereo_stripped().
//
// Throws SmilesError for tokenizer failures, unmatched parentheses or ring
// closures, valence violations of organic-subset atoms and '.'-separated
// input.
MolGraph parse(std::string_view smiles);

// Same as parse() but starting from an existing token stream.
MolGraph parse_tokens(std::span<const Token> tokens);

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_PARSER_H_
