//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_OPS_H_
#define MOLFP_NUMERICS_OPS_H_

#include <cstdint>
#include <span>

#include "molfp/random.h"
#include "molfp/numerics/tape.h"
#include "molfp/numerics/tensor.h"

namespace molfp::numerics {

// Attention mask: nonzero entries are blocked. A mask applies to a tensor
// whose element count is a multiple of the mask's; it repeats over the
// leading elements (flat index modulo mask size) and its last extent must
// equal the tensor's.
using Mask = Tensor<std::uint8_t>;

// Additive surrogate for -inf used on blocked logits.
inline constexpr double kMaskedLogit = -1e9;

// Differentiable primitives. All inputs of one call must live on the same
// tape; shape mismatches throw ShapeError.

// a[m,k] x b[k,n]
template <class T>
Var<T> matmul(Var<T> a, Var<T> b);

// x[m,k] x w[k,n] + bias[n]
template <class T>
Var<T> linear(Var<T> x, Var<T> w, Var<T> bias);

// Elementwise; shapes must match exactly.
template <class T>
Var<T> add(Var<T> a, Var<T> b);
template <class T>
Var<T> mul(Var<T> a, Var<T> b);
template <class T>
Var<T> scale(Var<T> a, T factor);
template <class T>
Var<T> relu(Var<T> a);

// Sum of all elements, as a one-element tensor.
template <class T>
Var<T> sum(Var<T> a);

// Row-wise normalization over the last extent (which must be >= 2):
// (x - mean) / sqrt(var + eps) * gain + bias.
template <class T>
Var<T> layer_norm(Var<T> x, Var<T> gain, Var<T> bias, T eps = T(1e-5));

// Softmax over the last extent. Blocked entries get kMaskedLogit added before
// normalization. Throws Error("numerics.fully_masked") if a row has no
// unblocked entry.
template <class T>
Var<T> softmax_rows(Var<T> x, const Mask *mask = nullptr);

// a[g,m,k] x b[g,k,n], or b[g,n,k]^T when transpose_b.
template <class T>
Var<T> batched_matmul(Var<T> a, Var<T> b, bool transpose_b);

// [batch*len, heads*dh] -> [heads*batch, len, dh] (head-major) and back.
template <class T>
Var<T> split_heads(Var<T> x, std::size_t batch, std::size_t len,
                   std::size_t heads);
template <class T>
Var<T> merge_heads(Var<T> x, std::size_t batch, std::size_t len,
                   std::size_t heads);

// Rows of table[V,d] selected by ids -> [ids.size(), d].
template <class T>
Var<T> embedding(Var<T> table, std::span<const std::int32_t> ids);

// Inverted dropout; identity when p == 0.
template <class T>
Var<T> dropout(Var<T> x, T p, Rng &rng);

// Mean negative log-likelihood of targets under softmax(logits[n,V]) over
// rows with exclude[i] == 0 (an empty span excludes nothing). Throws
// Error("numerics.all_padded") when every row is excluded.
template <class T>
Var<T> cross_entropy(Var<T> logits, std::span<const std::int32_t> targets,
                     std::span<const std::uint8_t> exclude = {});

// Plain-tensor forms shared with inference code.
template <class T>
Tensor<T> softmax_rows(const Tensor<T> &x, const Mask *mask = nullptr);
template <class T>
Tensor<T> matmul(const Tensor<T> &a, const Tensor<T> &b);

}  // namespace molfp::numerics

#endif  // MOLFP_NUMERICS_OPS_H_
