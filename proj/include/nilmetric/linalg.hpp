#pragma once

#include <Eigen/Dense>

#include <vector>

namespace nilmetric {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative singular-value cutoff used for ranks and nullspaces.
inline constexpr double kRankTol = 1e-10;

/// Orthonormal basis (columns) of the nullspace of `a`. Singular values at or
/// below tol * max(sigma_max, floor_scale) count as zero.
Matrix nullspace(const Matrix& a, double tol = kRankTol, double floor_scale = 0.0);

/// Numerical rank with the same cutoff rule as nullspace().
int rank(const Matrix& a, double tol = kRankTol, double floor_scale = 0.0);

/// Orthonormal basis (columns) of the column span of `a`.
Matrix range_basis(const Matrix& a, double tol = kRankTol, double floor_scale = 0.0);

Matrix symmetrize(const Matrix& a);

/// Eigenvalues of a symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& a);

Matrix matrix_exp(const Matrix& a);

/// Frobenius-orthonormal basis of sym(n), ordered (0,0),(0,1),...,(n-1,n-1).
std::vector<Matrix> symmetric_basis(int n);

}  // namespace nilmetric
