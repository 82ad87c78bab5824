//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_HASH_H_
#define MOLFP_HASH_H_

#include <cstdint>
#include <string_view>

namespace molfp {

// 64-bit FNV-1a. Integers are fed as 8 little-endian bytes, so results do
// not depend on the host byte order.
class Fnv1a {
public:
  static constexpr std::uint64_t kOffsetBasis = 0xcbf29ce484222325ULL;
  static constexpr std::uint64_t kPrime = 0x100000001b3ULL;

  Fnv1a &byte(std::uint8_t b) noexcept {
    state_ = (state_ ^ b) * kPrime;
    return *this;
  }

  Fnv1a &u64(std::uint64_t v) noexcept {
    for (int i = 0; i < 8; ++i)
      byte(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
  }

  Fnv1a &i64(std::int64_t v) noexcept {
    return u64(static_cast<std::uint64_t>(v));
  }

  Fnv1a &bytes(std::string_view s) noexcept {
    for (char c : s)
      byte(static_cast<std::uint8_t>(c));
    return *this;
  }

  std::uint64_t value() const noexcept { return state_; }

private:
  std::uint64_t state_ = kOffsetBasis;
};

}  // namespace molfp

#endif  // MOLFP_HASH_H_
