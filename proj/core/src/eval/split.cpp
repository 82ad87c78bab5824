//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/eval/split.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "molfp/error.h"
#include "molfp/hash.h"
#include "molfp/random.h"

namespace molfp::eval {

std::uint64_t cell_seed(std::uint64_t base, double fraction,
                        std::uint64_t trial) noexcept {
  return Fnv1a()
      .u64(base)
      .u64(std::bit_cast<std::uint64_t>(fraction))
      .u64(trial)
      .value();
}

Split make_split(const Dataset &data, double fraction, bool stratified,
                 std::uint64_t seed) {
  return make_split(data, data.canonical_order(), fraction, stratified, seed);
}

Split make_split(const Dataset &data, const std::vector<std::size_t> &rows,
                 double fraction, bool stratified, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw Error("eval.split", "training fraction must lie in (0, 1), got "
                                  + std::to_string(fraction));
  const std::size_t n = rows.size();
  const auto m = static_cast<std::size_t>(
      std::llround(fraction * static_cast<double>(n)));
  if (m < 2 || m >= n)
    throw Error("eval.too_few_rows",
                std::to_string(n) + " rows at fraction " + std::to_string(fraction)
                    + " give " + std::to_string(m)
                    + " training rows; need at least 2 and a non-empty test set");

  // Positions into `rows`, grouped into strata.
  std::vector<std::vector<std::size_t>> strata;
  if (stratified && data.tasks() > 0) {
    strata.resize(3);  // label 0, label 1, missing
    for (std::size_t p = 0; p < n; ++p) {
      const std::size_t r = rows[p];
      strata[data.has_label(r, 0) ? (data.label(r, 0) == 1.0 ? 1 : 0) : 2]
          .push_back(p);
    }
  } else {
    strata.resize(1);
    strata[0].resize(n);
    std::iota(strata[0].begin(), strata[0].end(), std::size_t { 0 });
  }

  // Largest-remainder quotas; ties go to the lower stratum.
  std::vector<std::size_t> quota(strata.size());
  std::vector<double> remainder(strata.size());
  std::size_t assigned = 0;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    const double exact = static_cast<double>(m) * static_cast<double>(strata[s].size())
                         / static_cast<double>(n);
    quota[s] = static_cast<std::size_t>(std::floor(exact));
    remainder[s] = exact - static_cast<double>(quota[s]);
    assigned += quota[s];
  }
  std::vector<std::size_t> by_remainder(strata.size());
  std::iota(by_remainder.begin(), by_remainder.end(), std::size_t { 0 });
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::size_t a, std::size_t b) {
                     return remainder[a] > remainder[b];
                   });
  for (std::size_t k = 0; assigned < m; ++k, ++assigned)
    ++quota[by_remainder[k % by_remainder.size()]];

  if (stratified && strata.size() == 3)
    for (std::size_t cls = 0; cls < 2; ++cls)
      if (!strata[cls].empty() && quota[cls] == 0)
        throw Error("eval.too_few_rows",
                    "class " + std::to_string(cls) + " has "
                        + std::to_string(strata[cls].size()) + " of " + std::to_string(n)
                        + " rows and gets no training row at fraction "
                        + std::to_string(fraction));

  Rng rng(seed);
  std::vector<std::size_t> train_pos, test_pos;
  for (std::size_t s = 0; s < strata.size(); ++s) {
    auto &members = strata[s];
    rng.shuffle(std::span(members));
    train_pos.insert(train_pos.end(), members.begin(),
                     members.begin() + static_cast<std::ptrdiff_t>(quota[s]));
    test_pos.insert(test_pos.end(),
                    members.begin() + static_cast<std::ptrdiff_t>(quota[s]),
                    members.end());
  }
  std::sort(train_pos.begin(), train_pos.end());
  std::sort(test_pos.begin(), test_pos.end());

  Split split;
  split.train.reserve(train_pos.size());
  split.test.reserve(test_pos.size());
  for (std::size_t p: train_pos)
    split.train.push_back(rows[p]);
  for (std::size_t p: test_pos)
    split.test.push_back(rows[p]);
  return split;
}

}  // namespace molfp::eval
