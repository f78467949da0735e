#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"
#include "nilmetric/structures.hpp"

#include <vector>

namespace nilmetric {

// Curvature ops evaluate formulas on any tensor in V; Jacobi is not required.

/// Ricci operator at the identity metric:
///   Ric_ab = -1/2 sum_ij mu(a,i,j) mu(b,i,j) + 1/4 sum_ij mu(i,j,a) mu(i,j,b).
Matrix ricci_identity(const SkewTensor& mu);

/// Ricci operator of (mu, G), transported through the Cholesky frame. The
/// result is G-self-adjoint.
Matrix ricci_operator(const SkewTensor& mu, const Metric& g);

double scalar_curvature(const SkewTensor& mu, const Metric& g);

/// m(mu) = -4 sum_j M_j M_j^T + 2 Gram(M_1..M_n), with (M_k)_ij = mu(i,j,k).
Matrix moment_map(const SkewTensor& mu);

/// Ric^gamma = orthogonal projection of Ric onto p_gamma.
Matrix invariant_ricci(const SkewTensor& mu, const Metric& g, const Structure& gamma,
                       double compat_tol = kStructureTol);

/// F = tr((Ric^gamma)^2) / ||mu||^4 at the identity metric. ZeroTensor for mu = 0.
double functional_F(const SkewTensor& mu, const Structure& gamma);

/// Same functional evaluated at (mu, G): tr((Ric^gamma_G)^2) / (4 scal_G)^2.
double functional_F(const SkewTensor& mu, const Metric& g, const Structure& gamma);

struct CurvatureReport {
  Matrix ric;
  double scal = 0.0;
  Matrix ric_gamma;
  Matrix moment;  // m of the frame tensor, pulled back like ric
  double F_value = 0.0;
  std::vector<double> eigen_ric;
  std::vector<double> eigen_ric_gamma;
};

CurvatureReport curvature_report(const SkewTensor& mu, const Metric& g, const Structure& gamma);

/// Ascending eigenvalues of a G-self-adjoint operator.
std::vector<double> self_adjoint_eigenvalues(const Metric& g, const Matrix& a);

}  // namespace nilmetric
