//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/fingerprints/ecfp.h"

#include <algorithm>
#include <utility>

#include "molfp/error.h"
#include "molfp/hash.h"

namespace molfp::fingerprints {

std::vector<std::uint64_t> ecfp_identifiers(const smiles::MolGraph &graph,
                                            int diameter) {
  if (diameter < 0)
    throw Error("fingerprints.config",
                "diameter must be non-negative, got " + std::to_string(diameter));
  const int n = graph.num_atoms();
  const int rounds = diameter / 2;
  std::vector<std::uint64_t> ids;
  ids.reserve(static_cast<std::size_t>(n) * (rounds + 1));

  for (int a = 0; a < n; ++a) {
    const auto &atom = graph.atom(a);
    Fnv1a h;
    h.i64(atom.atomic_number)
        .i64(graph.degree(a))
        .i64(graph.hydrogen_count(a))
        .i64(atom.formal_charge)
        .i64(atom.aromatic ? 1 : 0)
        .i64(graph.atom_in_ring(a) ? 1 : 0);
    ids.push_back(h.value());
  }

  std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
  for (int k = 1; k <= rounds; ++k) {
    const std::size_t prev = static_cast<std::size_t>(k - 1) * n;
    for (int a = 0; a < n; ++a) {
      env.clear();
      for (const auto &nb: graph.neighbors(a))
        env.emplace_back(static_cast<std::uint64_t>(graph.bond(nb.bond).order),
                         ids[prev + nb.atom]);
      std::sort(env.begin(), env.end());
      Fnv1a h;
      h.u64(ids[prev + a]);
      for (const auto &[order, id]: env)
        h.u64(order).u64(id);
      ids.push_back(h.value());
    }
  }
  return ids;
}

std::vector<std::uint8_t> ecfp(const smiles::MolGraph &graph, int diameter,
                               std::size_t n_bits) {
  if (n_bits == 0)
    throw Error("fingerprints.config", "n_bits must be positive");
  std::vector<std::uint8_t> bits(n_bits, 0);
  for (std::uint64_t id: ecfp_identifiers(graph, diameter))
    bits[id % n_bits] = 1;
  return bits;
}

std::string bits_to_hex(std::span<const std::uint8_t> bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string hex;
  hex.reserve((bits.size() + 7) / 8 * 2);
  for (std::size_t j = 0; j * 8 < bits.size(); ++j) {
    unsigned byte = 0;
    for (std::size_t i = 0; i < 8 && j * 8 + i < bits.size(); ++i)
      byte |= (bits[j * 8 + i] ? 1u : 0u) << i;
    hex.push_back(kDigits[byte >> 4]);
    hex.push_back(kDigits[byte & 15]);
  }
  return hex;
}

}  // namespace molfp::fingerprints
