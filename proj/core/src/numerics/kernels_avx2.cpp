//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "gemm_tiles.h"

namespace molfp::numerics::kernels {

#if MOLFP_HAVE_AVX2_KERNELS
void gemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k, const float *a,
                  const float *b, float *c) {
  gemm_nn_tiled<float, 32>(m, n, k, a, b, c);
}

void gemm_nn_avx2(std::size_t m, std::size_t n, std::size_t k,
                  const double *a, const double *b, double *c) {
  gemm_nn_tiled<double, 32>(m, n, k, a, b, c);
}
#endif

}  // namespace molfp::numerics::kernels
