#pragma once

#include "nilmetric/linalg.hpp"

#include <cstddef>
#include <vector>

namespace nilmetric {

/// An element of V = Λ²(n*)⊗n given by structure constants c_{ij}^k.
///
/// Only pairs i<j are stored; mu(X_j,X_i) = -mu(X_i,X_j) comes from the
/// accessor. Indices are 0-based here; file formats are 1-based.
class SkewTensor {
 public:
  SkewTensor() = default;
  explicit SkewTensor(int dim);

  static SkewTensor zero(int dim) { return SkewTensor(dim); }

  int dim() const noexcept { return dim_; }

  /// Coefficient <mu(X_i,X_j),X_k> for any i,j (antisymmetric, zero on i==j).
  double operator()(int i, int j, int k) const;

  /// Sets c_{ij}^k; requires i != j, stores with the sign fixed by i<j order.
  void set(int i, int j, int k, double value);
  void add(int i, int j, int k, double value);

  /// mu(X_i,X_j) as a coordinate vector.
  Vector bracket(int i, int j) const;
  /// mu(x,y) for arbitrary coordinate vectors.
  Vector bracket(const Vector& x, const Vector& y) const;

  /// ad(X_i) as an n×n matrix: column j is mu(X_i,X_j).
  Matrix ad(int i) const;

  /// Storage layout: pair index p(i,j) for i<j times n plus k.
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::vector<double>& coeffs() noexcept { return coeffs_; }
  Vector as_vector() const;
  static SkewTensor from_vector(int dim, const Vector& v);

  std::size_t pair_count() const noexcept;
  static std::size_t pair_index(int i, int j, int dim);

  /// Euclidean norm of the stored coefficients (not the inner() norm).
  double coeff_norm() const;
  bool is_zero() const;
  bool all_finite() const;

  SkewTensor& operator+=(const SkewTensor& other);
  SkewTensor& operator-=(const SkewTensor& other);
  SkewTensor& operator*=(double s);

  friend SkewTensor operator+(SkewTensor a, const SkewTensor& b) { return a += b; }
  friend SkewTensor operator-(SkewTensor a, const SkewTensor& b) { return a -= b; }
  friend SkewTensor operator*(double s, SkewTensor a) { return a *= s; }
  friend SkewTensor operator*(SkewTensor a, double s) { return a *= s; }
  friend bool operator==(const SkewTensor&, const SkewTensor&) = default;

 private:
  int dim_ = 0;
  std::vector<double> coeffs_;
};

}  // namespace nilmetric
