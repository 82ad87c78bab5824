//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLFP_NUMERICS_PCA_H_
#define MOLFP_NUMERICS_PCA_H_

#include <cstddef>
#include <vector>

#include "molfp/numerics/tensor.h"

namespace molfp::numerics {

struct Pca {
  Tensor<double> mean;        // [d]
  Tensor<double> components;  // [k,d], orthonormal rows
  std::vector<double> variance;  // per component, decreasing
  Tensor<double> scores;      // [n,k]
};

// Projection of the mean-centered rows of x[n,d] onto the top-k principal
// axes. Each component's sign is fixed so that its largest-magnitude entry
// is positive. Throws Error("numerics.pca") unless 1 <= k <= min(n,d).
Pca pca_fit(const Tensor<double> &x, std::size_t k);

inline Tensor<double> pca_project(const Tensor<double> &x, std::size_t k) {
  return pca_fit(x, k).scores;
}

}  // namespace molfp::numerics

#endif  // MOLFP_NUMERICS_PCA_H_
