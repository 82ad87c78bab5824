//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/predictors/standardize.h"

#include <cmath>

namespace molfp::predictors {

Standardizer Standardizer::fit(const Matrix &x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  Standardizer s { std::vector<double>(d, 0.0), std::vector<double>(d, 1.0) };
  if (n == 0)
    return s;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      s.mean[j] += x.at(i, j);
  for (double &m: s.mean)
    m /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double c = x.at(i, j) - s.mean[j];
      var[j] += c * c;
    }
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] / static_cast<double>(n));
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

Matrix Standardizer::apply(const Matrix &x) const {
  Matrix out(x.shape());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      out.at(i, j) = (x.at(i, j) - mean[j]) / scale[j];
  return out;
}

}  // namespace molfp::predictors
