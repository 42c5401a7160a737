#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "minubench/types.hpp"

namespace minubench {

/// Thin-plate-spline warp of the plane. f(p) = affine * (1, px, py) +
/// sum_j weights_j * U(|p - control_j|) with kernel U(r) = r^2 log r^2,
/// U(0) = 0. The weight columns satisfy the side conditions (zero sum and
/// zero first moments against x and y).
template <typename Scalar = double>
struct TpsTransformT {
  using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

  PointMatrix control_points;          // n x 2 source points
  PointMatrix weights;                 // n x 2 kernel coefficients
  Eigen::Matrix<Scalar, 2, 3> affine;  // columns: offset, x, y
  Scalar regularization = Scalar(0);
};

using TpsTransform = TpsTransformT<double>;

/// Kernel evaluated on a squared radius: U(r) = r^2 log(r^2).
template <typename Scalar>
Scalar tps_kernel_r2(Scalar r2) {
  return r2 > Scalar(0) ? r2 * std::log(r2) : Scalar(0);
}

/// Solves the standard TPS linear system with Tikhonov term lambda * I on the
/// kernel block. At lambda = 0 the fit interpolates the correspondences.
/// Throws DataError when the system is singular (collinear or duplicate
/// control points).
template <typename Scalar>
TpsTransformT<Scalar> tps_fit(
    const typename TpsTransformT<Scalar>::PointMatrix& source,
    const typename TpsTransformT<Scalar>::PointMatrix& target,
    Scalar lambda = Scalar(0)) {
  using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n = source.rows();
  if (n < 3) {
    throw DataError("tps_fit: at least 3 control points required");
  }
  if (target.rows() != n) {
    throw DataError("tps_fit: source and target sizes differ");
  }
  if (lambda < Scalar(0)) {
    throw DataError("tps_fit: regularization must be non-negative");
  }

  MatrixX system = MatrixX::Zero(n + 3, n + 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Scalar r2 = (source.row(i) - source.row(j)).squaredNorm();
      const Scalar u = tps_kernel_r2(r2);
      system(i, j) = u;
      system(j, i) = u;
    }
    system(i, i) = lambda;
    system(i, n) = Scalar(1);
    system(i, n + 1) = source(i, 0);
    system(i, n + 2) = source(i, 1);
    system(n, i) = Scalar(1);
    system(n + 1, i) = source(i, 0);
    system(n + 2, i) = source(i, 1);
  }

  MatrixX rhs = MatrixX::Zero(n + 3, 2);
  rhs.topRows(n) = target;

  const Eigen::ColPivHouseholderQR<MatrixX> qr(system);
  if (!qr.isInvertible()) {
    throw DataError(
        "tps_fit: singular system (collinear or duplicate control points)");
  }
  MatrixX solution = qr.solve(rhs);
  // One step of iterative refinement; the kernel block spans several orders
  // of magnitude and the raw solve can leave interpolation residuals above
  // the 1e-9 px contract.
  solution += qr.solve(rhs - system * solution);

  TpsTransformT<Scalar> tps;
  tps.control_points = source;
  tps.weights = solution.topRows(n);
  tps.affine.row(0) = solution.col(0).tail(3).transpose();
  tps.affine.row(1) = solution.col(1).tail(3).transpose();
  tps.regularization = lambda;
  return tps;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 2, 1> tps_eval(const TpsTransformT<Scalar>& tps,
                                     const Eigen::Matrix<Scalar, 2, 1>& p) {
  Eigen::Matrix<Scalar, 2, 1> out =
      tps.affine.col(0) + tps.affine.col(1) * p.x() + tps.affine.col(2) * p.y();
  for (Eigen::Index j = 0; j < tps.control_points.rows(); ++j) {
    const Scalar dx = p.x() - tps.control_points(j, 0);
    const Scalar dy = p.y() - tps.control_points(j, 1);
    const Scalar u = tps_kernel_r2(dx * dx + dy * dy);
    out.x() += tps.weights(j, 0) * u;
    out.y() += tps.weights(j, 1) * u;
  }
  return out;
}

}  // namespace minubench
