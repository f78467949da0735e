#pragma once

#include "nilmetric/linalg.hpp"

namespace nilmetric {

/// Left-invariant inner product <X,Y> = X^T G Y on the fixed basis.
///
/// Construction checks symmetry and positive definiteness. The Cholesky
/// factor G = L L^T gives the transport h = L^T, an isometry from (R^n, G)
/// to (R^n, I); every orthonormal-frame formula is evaluated after pushing
/// tensors and operators through h.
class Metric {
 public:
  explicit Metric(Matrix g);

  static Metric identity(int n) { return Metric(Matrix::Identity(n, n)); }

  int dim() const noexcept { return static_cast<int>(g_.rows()); }
  const Matrix& matrix() const noexcept { return g_; }

  /// h = L^T.
  const Matrix& transport() const noexcept { return h_; }
  /// h^{-1}.
  const Matrix& transport_inverse() const noexcept { return h_inv_; }

  /// Operator A on (R^n,G) to the orthonormal frame: h A h^{-1}.
  Matrix to_frame(const Matrix& a) const { return h_ * a * h_inv_; }
  /// Inverse of to_frame().
  Matrix from_frame(const Matrix& a) const { return h_inv_ * a * h_; }
  /// Bilinear form (matrix B, B(x,y)=x^T B y) to the orthonormal frame.
  Matrix form_to_frame(const Matrix& b) const { return h_inv_.transpose() * b * h_inv_; }

  double inner(const Vector& x, const Vector& y) const { return x.dot(g_ * y); }

  bool is_identity(double tol = 0.0) const;

 private:
  Matrix g_;
  Matrix h_;
  Matrix h_inv_;
};

}  // namespace nilmetric
