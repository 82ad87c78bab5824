//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SMILES_ELEMENTS_H_
#define MOLFP_SMILES_ELEMENTS_H_

#include <span>
#include <string_view>

namespace molfp::smiles {

// Atomic number for a capitalized element symbol ("C", "Cl", "Se"), or 0 when
// the symbol is not in the periodic table.
int atomic_number(std::string_view symbol) noexcept;

// Inverse of atomic_number(); empty for out-of-range numbers.
std::string_view element_symbol(int atomic_number) noexcept;

// Organic-subset elements that may appear outside brackets.
bool is_organic_subset(int atomic_number) noexcept;

// Elements whose lowercase (aromatic) spelling is accepted: b c n o p s se as.
bool is_aromatizable(int atomic_number) noexcept;

// Allowed valences for organic-subset elements in increasing order; the first
// entry is the default valence. Empty for elements outside the subset.
std::span<const int> allowed_valences(int atomic_number) noexcept;

}  // namespace molfp::smiles

#endif  // MOLFP_SMILES_ELEMENTS_H_
