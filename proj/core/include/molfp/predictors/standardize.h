//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_PREDICTORS_STANDARDIZE_H_
#define MOLFP_PREDICTORS_STANDARDIZE_H_

#include <vector>

#include "molfp/numerics/tensor.h"

namespace molfp::predictors {

using Matrix = numerics::Tensor<double>;

// Per-column affine map to zero mean and unit population variance. Constant
// columns are centered only.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const Matrix &x);
  Matrix apply(const Matrix &x) const;
};

}  // namespace molfp::predictors

#endif  // MOLFP_PREDICTORS_STANDARDIZE_H_
