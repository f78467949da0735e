#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"

#include <optional>
#include <vector>

namespace nilmetric {

inline constexpr double kJacobiTol = 1e-10;

/// Euclidean norm over i<j<k of the cyclic Jacobi sum.
double jacobi_residual(const SkewTensor& mu);

/// True when jacobi_residual(mu) <= tol * (1 + ||mu||^2).
bool satisfies_jacobi(const SkewTensor& mu, double tol = kJacobiTol);

/// Dimensions of n ⊇ mu(n,n) ⊇ mu(n,mu(n,n)) ⊇ ..., starting with n and
/// ending either at 0 or at the first repeated positive dimension.
std::vector<int> lower_central_series_dims(const SkewTensor& mu);

/// Nilpotency index: first k with C^{k+1} = 0 (abelian -> 1).
/// Throws NotNilpotent if the series stabilizes at positive dimension.
int nilpotency_index(const SkewTensor& mu);

/// A Jacobi-valid nilpotent bracket together with its nilpotency index.
class Bracket {
 public:
  /// Validates Jacobi (NotLie) and nilpotency (NotNilpotent).
  explicit Bracket(SkewTensor tensor, double jacobi_tol = kJacobiTol);

  const SkewTensor& tensor() const noexcept { return tensor_; }
  int nilpotency_index() const noexcept { return index_; }
  int dim() const noexcept { return tensor_.dim(); }

 private:
  SkewTensor tensor_;
  int index_ = 1;
};

/// g.mu(X,Y) = g mu(g^{-1}X, g^{-1}Y). Throws SingularMap when g is not
/// invertible at working precision; warns on stderr when cond(g) > 1e12.
SkewTensor act(const Matrix& g, const SkewTensor& mu);

/// <mu,lambda> summed over all ordered pairs (i,j): each stored coefficient
/// counts twice.
double inner(const SkewTensor& mu, const SkewTensor& lambda);
double norm(const SkewTensor& mu);

/// delta_mu(A) = A mu(.,.) - mu(A.,.) - mu(.,A.).
SkewTensor coboundary(const SkewTensor& mu, const Matrix& a);

/// Matrix of A -> delta_mu(A) acting on column-major vec(A).
Matrix coboundary_matrix(const SkewTensor& mu);

/// Frobenius-orthonormal basis of Der(mu) = ker delta_mu.
std::vector<Matrix> derivation_basis(const SkewTensor& mu, double tol = kRankTol);

/// Frobenius-orthonormal basis of the symmetric derivations Der(mu) ∩ sym(n).
std::vector<Matrix> symmetric_derivation_basis(const SkewTensor& mu, double tol = kRankTol);

/// Basis (columns) of the center {Z : mu(Z, .) = 0}, orthonormal for G.
Matrix center_basis(const SkewTensor& mu, const Metric& g);

/// Orthogonal splitting n = n1 ⊕ n2 of a 2-step algebra with n2 the center.
struct TwoStepSplit {
  Matrix n1;  // G-orthonormal columns
  Matrix n2;  // G-orthonormal columns spanning the center
};

/// Throws NotTwoStep unless mu(n,n) is nonzero and central and the center is
/// a proper subspace.
TwoStepSplit two_step_split(const SkewTensor& mu, const Metric& g);

/// j_mu(Z) defined by <j(Z)X,Y> = <mu(X,Y),Z> for X,Y in n1.
struct JOperator {
  Matrix block;  // matrix on n1 in the basis split.n1
  Matrix full;   // same map on all of n, zero on the center
  TwoStepSplit split;
};

/// Z must lie in the center (InvalidArgument otherwise).
JOperator j_operator(const SkewTensor& mu, const Metric& g, const Vector& z);

enum class HTypeClass { HType, ModifiedHType, Neither };

/// Tests j(Z)^2 = c(Z) I, c(Z) < 0, on a center basis plus `random_samples`
/// random central vectors drawn from `seed`.
HTypeClass htype_classify(const SkewTensor& mu, const Metric& g, int random_samples = 8,
                          unsigned seed = 7, double tol = 1e-9);

}  // namespace nilmetric
