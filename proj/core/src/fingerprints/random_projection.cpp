//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/fingerprints/random_projection.h"

#include <map>
#include <string>

#include "molfp/hash.h"
#include "molfp/random.h"
#include "molfp/smiles/tokenizer.h"

namespace molfp::fingerprints {

std::vector<double> random_projection_fingerprint(std::string_view smiles,
                                                  std::uint64_t seed,
                                                  std::size_t dims) {
  std::map<std::string, int> counts;
  for (const auto &token: smiles::tokenize(smiles))
    ++counts[token.text];
  std::vector<double> out(dims, 0.0);
  for (const auto &[text, count]: counts) {
    Rng rng(Fnv1a().u64(seed).bytes(text).value());
    for (std::size_t i = 0; i < dims; ++i)
      out[i] += count * rng.normal();
  }
  return out;
}

}  // namespace molfp::fingerprints
