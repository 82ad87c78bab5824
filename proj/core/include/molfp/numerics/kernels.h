//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_KERNELS_H_
#define MOLFP_NUMERICS_KERNELS_H_

#include <cstddef>

namespace molfp::numerics::kernels {

// Dense products on raw row-major buffers. Every output element is
// accumulated over the inner index in increasing order, independent of how
// many rows are processed together, so a row of the result is bit-identical
// whether it is computed alone or inside a larger batch.

// C[m,n] (+)= A[m,k] * B[k,n]
template <class T>
void gemm_nn(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate);

// C[m,n] (+)= A[m,k] * B[n,k]^T
template <class T>
void gemm_nt(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate);

// C[k,n] (+)= A[m,k]^T * B[m,n]
template <class T>
void gemm_tn(std::size_t m, std::size_t n, std::size_t k, const T *a,
             const T *b, T *c, bool accumulate);

// out[n,m] = in[m,n]^T
template <class T>
void transpose(std::size_t m, std::size_t n, const T *in, T *out);

}  // namespace molfp::numerics::kernels

#endif  // MOLFP_NUMERICS_KERNELS_H_
