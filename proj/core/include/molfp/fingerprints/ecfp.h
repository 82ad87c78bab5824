//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_FINGERPRINTS_ECFP_H_
#define MOLFP_FINGERPRINTS_ECFP_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "molfp/smiles/mol_graph.h"

namespace molfp::fingerprints {

// Atom identifiers of every iteration, iteration-major: entry
// [k * num_atoms + a] is atom a after k rounds, for k = 0..diameter/2.
//
// Round 0 hashes (atomic number, degree, hydrogen count, formal charge,
// aromatic, in ring). Round k hashes the atom's round k-1 identifier followed
// by its (bond order, neighbor identifier) pairs in ascending order.
std::vector<std::uint64_t> ecfp_identifiers(const smiles::MolGraph &graph,
                                            int diameter = 4);

// Presence bit vector (one byte per bit, 0 or 1) with bit id % n_bits set for
// every identifier. Throws Error("fingerprints.config") if n_bits is 0 or
// diameter is negative.
std::vector<std::uint8_t> ecfp(const smiles::MolGraph &graph, int diameter = 4,
                               std::size_t n_bits = 1024);

// Lowercase hex, two characters per byte; byte j packs bits 8j..8j+7 with
// bit 8j in the least significant position.
std::string bits_to_hex(std::span<const std::uint8_t> bits);

}  // namespace molfp::fingerprints

#endif  // MOLFP_FINGERPRINTS_ECFP_H_
