//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_SRC_PREDICTORS_COMMON_H_
#define MOLFP_SRC_PREDICTORS_COMMON_H_

#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "molfp/error.h"
#include "molfp/numerics/tensor.h"

namespace molfp::predictors::detail {

inline void check_training_data(const numerics::Tensor<double> &x,
                                std::span<const double> y) {
  if (x.rank() != 2 || x.dim(0) != y.size())
    throw Error("predictors.shape",
                "features " + numerics::shape_string(x.shape()) + " vs "
                    + std::to_string(y.size()) + " targets");
  for (double v: x.values())
    if (!std::isfinite(v))
      throw Error("predictors.non_finite", "non-finite feature value");
  for (double v: y)
    if (!std::isfinite(v))
      throw Error("predictors.non_finite", "non-finite target value");
}

inline void check_binary(std::span<const double> y) {
  bool seen[2] = { false, false };
  for (double v: y) {
    if (v != 0.0 && v != 1.0)
      throw Error("predictors.labels",
                  "classification labels must be 0 or 1, got "
                      + std::to_string(v));
    seen[v == 1.0] = true;
  }
  if (!seen[0] || !seen[1])
    throw Error("predictors.single_class",
                "training labels contain a single class");
}

inline void check_width(const numerics::Tensor<double> &x, std::size_t d) {
  if (x.rank() != 2 || x.dim(1) != d)
    throw Error("predictors.dimension",
                "model expects " + std::to_string(d) + " features, got "
                    + numerics::shape_string(x.shape()));
}

// log(1 + exp(z)) without overflow.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0)
    return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Sigmoid kept strictly inside (0, 1).
inline double probability(double z) {
  constexpr double lo = std::numeric_limits<double>::min();
  constexpr double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2;
  const double p = sigmoid(z);
  return p < lo ? lo : (p > hi ? hi : p);
}

}  // namespace molfp::predictors::detail

#endif  // MOLFP_SRC_PREDICTORS_COMMON_H_
