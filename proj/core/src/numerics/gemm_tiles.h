//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SRC_NUMERICS_GEMM_TILES_H_
#define MOLFP_SRC_NUMERICS_GEMM_TILES_H_

#include <cstddef>
#include <cstring>

namespace molfp::numerics::kernels {

// C[m,n] += A[m,k] * B[k,n] in register tiles of `Bytes`-wide vectors.
// Every element adds its k products in increasing order with separate
// multiply and add, so results do not depend on the vector width or on how
// rows are grouped.
template <class T, std::size_t Bytes>
struct Tiles {
  typedef T vec __attribute__((vector_size(Bytes)));
  static constexpr std::size_t kWidth = Bytes / sizeof(T);
  static constexpr std::size_t kRows = 4;

  static inline __attribute__((always_inline)) vec load(const T *p) {
    vec v;
    std::memcpy(&v, p, sizeof v);
    return v;
  }
  static inline __attribute__((always_inline)) void store(T *p, vec v) {
    std::memcpy(p, &v, sizeof v);
  }

  template <std::size_t R, std::size_t V>
  static inline __attribute__((always_inline)) void tile(
      std::size_t k, const T *a, std::size_t lda, const T *b, std::size_t ldb,
      T *c, std::size_t ldc) {
    vec acc[R][V];
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t v = 0; v < V; ++v)
        acc[r][v] = load(c + r * ldc + v * kWidth);
    for (std::size_t p = 0; p < k; ++p) {
      const T *bp = b + p * ldb;
      vec bv[V];
      for (std::size_t v = 0; v < V; ++v)
        bv[v] = load(bp + v * kWidth);
      for (std::size_t r = 0; r < R; ++r) {
        const T av = a[r * lda + p];
        for (std::size_t v = 0; v < V; ++v)
          acc[r][v] += av * bv[v];
      }
    }
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t v = 0; v < V; ++v)
        store(c + r * ldc + v * kWidth, acc[r][v]);
  }

  template <std::size_t V>
  static inline __attribute__((always_inline)) void column_panel(
      std::size_t m, std::size_t n, std::size_t k, const T *a, const T *b,
      T *c) {
    std::size_t i = 0;
    for (; i + kRows <= m; i += kRows)
      tile<kRows, V>(k, a + i * k, k, b, n, c + i * n, n);
    for (; i < m; ++i)
      tile<1, V>(k, a + i * k, k, b, n, c + i * n, n);
  }

  static inline __attribute__((always_inline)) void run(
      std::size_t m, std::size_t n, std::size_t k, const T *a, const T *b,
      T *c) {
    std::size_t j = 0;
    for (; j + 2 * kWidth <= n; j += 2 * kWidth)
      column_panel<2>(m, n, k, a, b + j, c + j);
    for (; j + kWidth <= n; j += kWidth)
      column_panel<1>(m, n, k, a, b + j, c + j);
    for (; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        T acc = c[i * n + j];
        for (std::size_t p = 0; p < k; ++p)
          acc += a[i * k + p] * b[p * n + j];
        c[i * n + j] = acc;
      }
    }
  }
};

template <class T, std::size_t Bytes>
void gemm_nn_tiled(std::size_t m, std::size_t n, std::size_t k, const T *a,
                   const T *b, T *c) {
  Tiles<T, Bytes>::run(m, n, k, a, b, c);
}

#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
#define MOLFP_HAVE_AVX2_KERNELS 1
// Built in a separate translation unit with AVX2 enabled.
void gemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k, const float *a,
                  const float *b, float *c);
void gemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k,
                  const double *a, const double *b, double *c);
#else
#define MOLFP_HAVE_AVX2_KERNELS 0
#endif

}  // namespace molfp::numerics::kernels

#endif  // MOLFP_SRC_NUMERICS_GEMM_TILES_H_
