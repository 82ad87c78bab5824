//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_FINGERPRINTS_RANDOM_PROJECTION_H_
#define MOLFP_FINGERPRINTS_RANDOM_PROJECTION_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace molfp::fingerprints {

// Control featurizer: sum over the token multiset of count * g(token), where
// g(token) is a standard-normal vector of length `dims` drawn from a
// generator seeded by FNV-1a(seed, token text). Throws SmilesError if the
// string does not tokenize.
std::vector<double> random_projection_fingerprint(std::string_view smiles,
                                                  std::uint64_t seed,
                                                  std::size_t dims = 1024);

}  // namespace molfp::fingerprints

#endif  // MOLFP_FINGERPRINTS_RANDOM_PROJECTION_H_
