//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/numerics/adam.h"

#include <cmath>
#include <string>

namespace molfp::numerics {

template <class T>
void adam_step(std::span<Parameter<T> *const> params, AdamState<T> &state) {
  if (state.m.empty()) {
    for (const Parameter<T> *p: params) {
      state.m.push_back(Tensor<T>::zeros_like(p->value));
      state.v.push_back(Tensor<T>::zeros_like(p->value));
    }
  }
  if (state.m.size() != params.size())
    throw ShapeError("adam: state tracks " + std::to_string(state.m.size())
                     + " parameters, got " + std::to_string(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Parameter<T> &p = *params[i];
    if (p.value.shape() != state.m[i].shape()
        || p.grad.shape() != p.value.shape())
      throw ShapeError("adam: parameter '" + p.name + "' has shape "
                       + shape_string(p.value.shape()) + ", state has "
                       + shape_string(state.m[i].shape()));
  }

  ++state.t;
  const AdamOptions &o = state.options;
  const double step = static_cast<double>(state.t);
  const T c1 = static_cast<T>(1.0 - std::pow(o.beta1, step));
  const T c2 = static_cast<T>(1.0 - std::pow(o.beta2, step));
  const T b1 = static_cast<T>(o.beta1), b2 = static_cast<T>(o.beta2);
  const T lr = static_cast<T>(o.lr), eps = static_cast<T>(o.eps);

  for (std::size_t i = 0; i < params.size(); ++i) {
    Parameter<T> &p = *params[i];
    T *w = p.value.data();
    const T *g = p.grad.data();
    T *m = state.m[i].data();
    T *v = state.v[i].data();
    for (std::size_t j = 0; j < p.value.numel(); ++j) {
      m[j] = b1 * m[j] + (T(1) - b1) * g[j];
      v[j] = b2 * v[j] + (T(1) - b2) * g[j] * g[j];
      const T mhat = m[j] / c1;
      const T vhat = v[j] / c2;
      w[j] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
  }
}

template void adam_step<float>(std::span<Parameter<float> *const>,
                               AdamState<float> &);
template void adam_step<double>(std::span<Parameter<double> *const>,
                                AdamState<double> &);

}  // namespace molfp::numerics
