//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/numerics/kernels.h"

#include "gemm_tiles.h"

#include <algorithm>
#include <cstring>
#include <vector>

namespace molfp::numerics::kernels {

template <class T>
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate) {
  if (!accumulate)
    std::fill(c, c + m * n, T(0));
#if MOLFP_HAVE_AVX2_KERNELS
  static const bool avx2 = __builtin_cpu_supports("avx2");
  if (avx2) {
    gemm_nn_avx2(m, n, k, a, b, c);
    return;
  }
#endif
  gemm_nn_tiled<T, 16>(m, n, k, a, b, c);
}

template <class T>
void transpose(std::size_t m, std::size_t n, const T *in, T *out) {
  constexpr std::size_t kBlock = 32;
  for (std::size_t i0 = 0; i0 < m; i0 += kBlock) {
    const std::size_t i1 = std::min(m, i0 + kBlock);
    for (std::size_t j0 = 0; j0 < n; j0 += kBlock) {
      const std::size_t j1 = std::min(n, j0 + kBlock);
      for (std::size_t i = i0; i < i1; ++i) {
        for (std::size_t j = j0; j < j1; ++j)
          out[j * m + i] = in[i * n + j];
      }
    }
  }
}

template <class T>
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate) {
  std::vector<T> bt(k * n);
  transpose(n, k, b, bt.data());
  gemm_nn(m, n, k, a, bt.data(), c, accumulate);
}

template <class T>
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate) {
  std::vector<T> at(m * k);
  transpose(m, k, a, at.data());
  gemm_nn(k, n, m, at.data(), b, c, accumulate);
}

#define MOLFP_INSTANTIATE_KERNELS(T)                                          \
  template void gemm_nn<T>(std::size_t, std::size_t, std::size_t, const T *, \
                           const T *, T *, bool);                             \
  template void gemm_nt<T>(std::size_t, std::size_t, std::size_t, const T *, \
                           const T *, T *, bool);                             \
  template void gemm_tn<T>(std::size_t, std::size_t, std::size_t, const T *, \
                           const T *, T *, bool);                             \
  template void transpose<T>(std::size_t, std::size_t, const T *, T *);

MOLFP_INSTANTIATE_KERNELS(float)
MOLFP_INSTANTIATE_KERNELS(double)

#undef MOLFP_INSTANTIATE_KERNELS

}  // namespace molfp::numerics::kernels
