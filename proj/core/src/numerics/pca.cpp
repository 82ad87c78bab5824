//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/numerics/pca.h"

#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace molfp::numerics {

Pca pca_fit(const Tensor<double> &x, std::size_t k) {
  if (x.rank() != 2)
    throw ShapeError("pca: expected a matrix, got " + shape_string(x.shape()));
  const std::size_t n = x.dim(0), d = x.dim(1);
  if (k < 1 || k > std::min(n, d))
    throw Error("numerics.pca", "k=" + std::to_string(k)
                                    + " outside [1, min(n,d)] for "
                                    + shape_string(x.shape()));

  using RowMatrix =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMatrix> data(x.data(), n, d);
  const Eigen::RowVectorXd mu = data.colwise().mean();
  const RowMatrix centered = data.rowwise() - mu;
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n > 1 ? n - 1 : 1);

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error("numerics.pca", "eigendecomposition did not converge");

  Pca out;
  out.mean = Tensor<double>({ d });
  for (std::size_t j = 0; j < d; ++j)
    out.mean[j] = mu(j);
  out.components = Tensor<double>({ k, d });
  out.variance.resize(k);
  // Eigenvalues come back ascending.
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::Index col = static_cast<Eigen::Index>(d - 1 - c);
    Eigen::VectorXd axis = solver.eigenvectors().col(col);
    Eigen::Index big = 0;
    axis.cwiseAbs().maxCoeff(&big);
    if (axis(big) < 0)
      axis = -axis;
    for (std::size_t j = 0; j < d; ++j)
      out.components.at(c, j) = axis(static_cast<Eigen::Index>(j));
    out.variance[c] = std::max(0.0, solver.eigenvalues()(col));
  }

  out.scores = Tensor<double>({ n, k });
  const Eigen::Map<const RowMatrix> comp(out.components.data(), k, d);
  Eigen::Map<RowMatrix> scores(out.scores.data(), n, k);
  scores = centered * comp.transpose();
  return out;
}

}  // namespace molfp::numerics
