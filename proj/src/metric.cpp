#include "nilmetric/metric.hpp"

#include "nilmetric/error.hpp"

#include <cmath>

namespace nilmetric {

Metric::Metric(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols() || g_.rows() == 0)
    throw Error(ErrorKind::InvalidArgument, "metric must be a nonempty square matrix");
  if (!g_.allFinite()) throw Error(ErrorKind::InvalidArgument, "metric has non-finite entries");
  const double asym = (g_ - g_.transpose()).norm();
  if (asym > 1e-12 * (1.0 + g_.norm()))
    throw Error(ErrorKind::InvalidArgument, "metric is not symmetric");
  g_ = symmetrize(g_);
  Eigen::LLT<Matrix> llt(g_);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::InvalidArgument, "metric is not positive definite");
  h_ = llt.matrixL().transpose();
  h_inv_ = h_.triangularView<Eigen::Upper>().solve(Matrix::Identity(g_.rows(), g_.cols()));
}

bool Metric::is_identity(double tol) const {
  return (g_ - Matrix::Identity(g_.rows(), g_.cols())).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace nilmetric
