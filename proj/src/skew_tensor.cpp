#include "nilmetric/skew_tensor.hpp"

#include "nilmetric/error.hpp"

#include <cmath>
#include <string>

namespace nilmetric {

SkewTensor::SkewTensor(int dim) : dim_(dim) {
  if (dim <= 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  coeffs_.assign(pair_count() * static_cast<std::size_t>(dim), 0.0);
}

std::size_t SkewTensor::pair_count() const noexcept {
  return static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_ - 1) / 2;
}

std::size_t SkewTensor::pair_index(int i, int j, int dim) {
  // Row-major enumeration of the strict upper triangle.
  const auto ui = static_cast<std::size_t>(i);
  const auto un = static_cast<std::size_t>(dim);
  return ui * un - ui * (ui + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

double SkewTensor::operator()(int i, int j, int k) const {
  if (i == j) return 0.0;
  if (i < j) return coeffs_[pair_index(i, j, dim_) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k)];
  return -coeffs_[pair_index(j, i, dim_) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k)];
}

void SkewTensor::set(int i, int j, int k, double value) {
  if (i == j) throw Error(ErrorKind::InvalidArgument, "mu(X_i,X_i) is zero by skew-symmetry");
  if (i < 0 || j < 0 || k < 0 || i >= dim_ || j >= dim_ || k >= dim_)
    throw Error(ErrorKind::InvalidArgument, "index out of range");
  if (i < j) {
    coeffs_[pair_index(i, j, dim_) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k)] = value;
  } else {
    coeffs_[pair_index(j, i, dim_) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(k)] = -value;
  }
}

void SkewTensor::add(int i, int j, int k, double value) { set(i, j, k, (*this)(i, j, k) + value); }

Vector SkewTensor::bracket(int i, int j) const {
  Vector v(dim_);
  for (int k = 0; k < dim_; ++k) v(k) = (*this)(i, j, k);
  return v;
}

Vector SkewTensor::bracket(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      const double w = x(i) * y(j) - x(j) * y(i);
      if (w == 0.0) continue;
      const std::size_t base = pair_index(i, j, dim_) * static_cast<std::size_t>(dim_);
      for (int k = 0; k < dim_; ++k) out(k) += w * coeffs_[base + static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Matrix SkewTensor::ad(int i) const {
  Matrix a(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (int k = 0; k < dim_; ++k) a(k, j) = (*this)(i, j, k);
  return a;
}

Vector SkewTensor::as_vector() const {
  return Eigen::Map<const Vector>(coeffs_.data(), static_cast<Eigen::Index>(coeffs_.size()));
}

SkewTensor SkewTensor::from_vector(int dim, const Vector& v) {
  SkewTensor t(dim);
  if (static_cast<std::size_t>(v.size()) != t.coeffs_.size())
    throw Error(ErrorKind::DimensionMismatch,
                "coefficient vector has length " + std::to_string(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) t.coeffs_[static_cast<std::size_t>(i)] = v(i);
  return t;
}

double SkewTensor::coeff_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

bool SkewTensor::is_zero() const {
  for (double c : coeffs_)
    if (c != 0.0) return false;
  return true;
}

bool SkewTensor::all_finite() const {
  for (double c : coeffs_)
    if (!std::isfinite(c)) return false;
  return true;
}

SkewTensor& SkewTensor::operator+=(const SkewTensor& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "tensor dimensions differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SkewTensor& SkewTensor::operator-=(const SkewTensor& other) {
  if (other.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "tensor dimensions differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SkewTensor& SkewTensor::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

}  // namespace nilmetric
