//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_ADAM_H_
#define MOLFP_NUMERICS_ADAM_H_

#include <cstdint>
#include <span>
#include <vector>

#include "molfp/numerics/tape.h"
#include "molfp/numerics/tensor.h"

namespace molfp::numerics {

struct AdamOptions {
  double lr = 1e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Moment estimates for an ordered parameter list. The i-th moment pair
// belongs to the i-th parameter passed to adam_step.
template <class T>
struct AdamState {
  AdamOptions options;
  std::uint64_t t = 0;
  std::vector<Tensor<T>> m;
  std::vector<Tensor<T>> v;

  AdamState() = default;
  explicit AdamState(AdamOptions opts): options(opts) { }
};

// One bias-corrected Adam update of every parameter from its grad. Moments
// are allocated on the first call; later calls must pass parameters with
// the same count and shapes (ShapeError otherwise).
template <class T>
void adam_step(std::span<Parameter<T> *const> params, AdamState<T> &state);

}  // namespace molfp::numerics

#endif  // MOLFP_NUMERICS_ADAM_H_
