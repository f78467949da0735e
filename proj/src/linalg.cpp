#include "nilmetric/linalg.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace nilmetric {

namespace {

double cutoff(const Vector& sigma, double tol, double floor_scale) {
  const double smax = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
  return tol * std::max(smax, floor_scale);
}

}  // namespace

Matrix nullspace(const Matrix& a, double tol, double floor_scale) {
  const Eigen::Index cols = a.cols();
  if (cols == 0) return Matrix(0, 0);
  if (a.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Vector& sigma = svd.singularValues();
  const double cut = cutoff(sigma, tol, floor_scale);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    // A zero matrix has every direction in its kernel.
    if (sigma(i) > cut && sigma(i) > 0.0) ++r;
  }
  return svd.matrixV().rightCols(cols - r);
}

int rank(const Matrix& a, double tol, double floor_scale) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sigma = svd.singularValues();
  const double cut = cutoff(sigma, tol, floor_scale);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut && sigma(i) > 0.0) ++r;
  }
  return r;
}

Matrix range_basis(const Matrix& a, double tol, double floor_scale) {
  if (a.size() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const Vector& sigma = svd.singularValues();
  const double cut = cutoff(sigma, tol, floor_scale);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cut && sigma(i) > 0.0) ++r;
  }
  return svd.matrixU().leftCols(r);
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

std::vector<double> symmetric_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(a), Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

Matrix matrix_exp(const Matrix& a) { return a.exp(); }

std::vector<Matrix> symmetric_basis(int n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  const double off = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      if (i == j) {
        e(i, i) = 1.0;
      } else {
        e(i, j) = off;
        e(j, i) = off;
      }
      basis.push_back(std::move(e));
    }
  }
  return basis;
}

}  // namespace nilmetric
