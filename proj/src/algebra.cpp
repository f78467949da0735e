#include "nilmetric/algebra.hpp"

#include "nilmetric/error.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <random>
#include <string>

namespace nilmetric {

namespace {

std::vector<Matrix> ad_matrices(const SkewTensor& mu) {
  std::vector<Matrix> ads;
  ads.reserve(static_cast<std::size_t>(mu.dim()));
  for (int i = 0; i < mu.dim(); ++i) ads.push_back(mu.ad(i));
  return ads;
}

/// Gram-Schmidt in the G inner product; drops columns that collapse.
Matrix g_orthonormalize(const Matrix& cols, const Matrix& g, double drop_tol = 1e-8) {
  Matrix out(cols.rows(), 0);
  for (Eigen::Index c = 0; c < cols.cols(); ++c) {
    Vector v = cols.col(c);
    const double start = std::sqrt(std::max(0.0, v.dot(g * v)));
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < out.cols(); ++k) v -= out.col(k) * out.col(k).dot(g * v);
    }
    const double len = std::sqrt(std::max(0.0, v.dot(g * v)));
    if (len <= drop_tol * std::max(1.0, start)) continue;
    out.conservativeResize(Eigen::NoChange, out.cols() + 1);
    out.col(out.cols() - 1) = v / len;
  }
  return out;
}

}  // namespace

double jacobi_residual(const SkewTensor& mu) {
  const int n = mu.dim();
  const auto ads = ad_matrices(mu);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        // mu(v, X_k) = -ad(X_k) v
        const Vector cyc = -(ads[k] * mu.bracket(i, j) + ads[i] * mu.bracket(j, k) +
                             ads[j] * mu.bracket(k, i));
        sum += cyc.squaredNorm();
      }
    }
  }
  return std::sqrt(sum);
}

bool satisfies_jacobi(const SkewTensor& mu, double tol) {
  const double nrm = norm(mu);
  return jacobi_residual(mu) <= tol * (1.0 + nrm * nrm);
}

std::vector<int> lower_central_series_dims(const SkewTensor& mu) {
  const int n = mu.dim();
  const auto ads = ad_matrices(mu);
  const double scale = norm(mu);
  std::vector<int> dims{n};
  Matrix current = Matrix::Identity(n, n);
  for (int step = 0; step <= n; ++step) {
    if (current.cols() == 0) break;
    Matrix images(n, n * current.cols());
    for (int i = 0; i < n; ++i) images.middleCols(i * current.cols(), current.cols()) = ads[i] * current;
    Matrix next = range_basis(images, kRankTol, scale);
    const int d = static_cast<int>(next.cols());
    dims.push_back(d);
    if (d == 0 || d == dims[dims.size() - 2]) break;
    current = std::move(next);
  }
  return dims;
}

int nilpotency_index(const SkewTensor& mu) {
  const auto dims = lower_central_series_dims(mu);
  if (dims.back() != 0)
    throw Error(ErrorKind::NotNilpotent,
                "lower central series stabilizes at dimension " + std::to_string(dims.back()));
  return static_cast<int>(dims.size()) - 1;
}

Bracket::Bracket(SkewTensor tensor, double jacobi_tol) : tensor_(std::move(tensor)) {
  if (!tensor_.all_finite()) throw Error(ErrorKind::InvalidArgument, "non-finite coefficient");
  if (!satisfies_jacobi(tensor_, jacobi_tol))
    throw Error(ErrorKind::NotLie,
                "Jacobi residual " + std::to_string(jacobi_residual(tensor_)) + " exceeds tolerance");
  index_ = nilmetric::nilpotency_index(tensor_);
}

SkewTensor act(const Matrix& g, const SkewTensor& mu) {
  const int n = mu.dim();
  if (g.rows() != n || g.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "map and tensor dimensions differ");
  Eigen::JacobiSVD<Matrix> svd(g);
  const Vector& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(sigma.size() - 1);
  if (!(smin > n * std::numeric_limits<double>::epsilon() * smax))
    throw Error(ErrorKind::SingularMap, "map is not invertible at working precision");
  if (smax / smin > 1e12)
    std::cerr << "nilmetric: warning: act() with condition number " << smax / smin << "\n";
  const Matrix h = g.partialPivLu().inverse();

  // Pulled-back slices h^T M_l h, then push the output index through g.
  std::vector<Matrix> slices;
  slices.reserve(static_cast<std::size_t>(n));
  for (int l = 0; l < n; ++l) {
    Matrix m(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) m(a, b) = mu(a, b, l);
    slices.push_back(h.transpose() * m * h);
  }
  SkewTensor out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += g(k, l) * slices[static_cast<std::size_t>(l)](i, j);
        out.set(i, j, k, s);
      }
    }
  }
  return out;
}

double inner(const SkewTensor& mu, const SkewTensor& lambda) {
  if (mu.dim() != lambda.dim()) throw Error(ErrorKind::DimensionMismatch, "tensor dimensions differ");
  const auto& a = mu.coeffs();
  const auto& b = lambda.coeffs();
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return 2.0 * s;
}

double norm(const SkewTensor& mu) { return std::sqrt(inner(mu, mu)); }

SkewTensor coboundary(const SkewTensor& mu, const Matrix& a) {
  const int n = mu.dim();
  if (a.rows() != n || a.cols() != n)
    throw Error(ErrorKind::DimensionMismatch, "map and tensor dimensions differ");
  SkewTensor out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector bij = mu.bracket(i, j);
      Vector v = a * bij;
      for (int p = 0; p < n; ++p) {
        const double api = a(p, i);
        const double apj = a(p, j);
        if (api != 0.0)
          for (int k = 0; k < n; ++k) v(k) -= api * mu(p, j, k);
        if (apj != 0.0)
          for (int k = 0; k < n; ++k) v(k) -= apj * mu(i, p, k);
      }
      for (int k = 0; k < n; ++k) out.set(i, j, k, v(k));
    }
  }
  return out;
}

Matrix coboundary_matrix(const SkewTensor& mu) {
  const int n = mu.dim();
  const auto rows = static_cast<Eigen::Index>(mu.coeffs().size());
  Matrix m = Matrix::Zero(rows, n * n);
  for (int r = 0; r < n; ++r) {
    for (int s = 0; s < n; ++s) {
      // A = E_rs: A X_s = X_r.
      const Eigen::Index col = r + s * n;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const auto base = static_cast<Eigen::Index>(SkewTensor::pair_index(i, j, n)) * n;
          m(base + r, col) += mu(i, j, s);
          if (i == s)
            for (int k = 0; k < n; ++k) m(base + k, col) -= mu(r, j, k);
          if (j == s)
            for (int k = 0; k < n; ++k) m(base + k, col) -= mu(i, r, k);
        }
      }
    }
  }
  return m;
}

std::vector<Matrix> derivation_basis(const SkewTensor& mu, double tol) {
  const int n = mu.dim();
  const Matrix ns = nullspace(coboundary_matrix(mu), tol);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c)
    out.push_back(Eigen::Map<const Matrix>(ns.col(c).data(), n, n));
  return out;
}

std::vector<Matrix> symmetric_derivation_basis(const SkewTensor& mu, double tol) {
  const int n = mu.dim();
  const auto sym = symmetric_basis(n);
  Matrix s(n * n, static_cast<Eigen::Index>(sym.size()));
  for (std::size_t c = 0; c < sym.size(); ++c)
    s.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Vector>(sym[c].data(), n * n);
  const Matrix ns = nullspace(coboundary_matrix(mu) * s, tol);
  std::vector<Matrix> out;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    const Vector v = s * ns.col(c);
    out.push_back(Eigen::Map<const Matrix>(v.data(), n, n));
  }
  return out;
}

Matrix center_basis(const SkewTensor& mu, const Metric& g) {
  const int n = mu.dim();
  if (g.dim() != n) throw Error(ErrorKind::DimensionMismatch, "metric and tensor dimensions differ");
  Matrix constraints(n * n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) constraints(j * n + k, i) = mu(i, j, k);
  const Matrix ns = nullspace(constraints, kRankTol, norm(mu));
  return g_orthonormalize(ns, g.matrix());
}

TwoStepSplit two_step_split(const SkewTensor& mu, const Metric& g) {
  const int n = mu.dim();
  const double scale = norm(mu);
  if (scale == 0.0) throw Error(ErrorKind::NotTwoStep, "abelian bracket has no proper center");
  TwoStepSplit split;
  split.n2 = center_basis(mu, g);
  if (split.n2.cols() >= n) throw Error(ErrorKind::NotTwoStep, "center is the whole algebra");
  const Matrix& gm = g.matrix();
  const Matrix proj_center = split.n2 * split.n2.transpose() * gm;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Vector b = mu.bracket(i, j);
      if ((b - proj_center * b).norm() > 1e-9 * scale)
        throw Error(ErrorKind::NotTwoStep, "derived algebra is not central");
    }
  }
  const Matrix complement = Matrix::Identity(n, n) - proj_center;
  split.n1 = g_orthonormalize(complement, gm);
  return split;
}

JOperator j_operator(const SkewTensor& mu, const Metric& g, const Vector& z) {
  const int n = mu.dim();
  if (z.size() != n) throw Error(ErrorKind::DimensionMismatch, "vector and tensor dimensions differ");
  JOperator out;
  out.split = two_step_split(mu, g);
  const Matrix& gm = g.matrix();
  const Matrix& n1 = out.split.n1;
  const Matrix& n2 = out.split.n2;
  const Vector zc = n2 * (n2.transpose() * (gm * z));
  const double zn = std::sqrt(std::max(0.0, z.dot(gm * z)));
  const Vector off = z - zc;
  if (std::sqrt(std::max(0.0, off.dot(gm * off))) > 1e-9 * std::max(1.0, zn))
    throw Error(ErrorKind::InvalidArgument, "Z is not central");
  const auto k = n1.cols();
  out.block = Matrix::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a)
    for (Eigen::Index b = 0; b < k; ++b)
      out.block(a, b) = g.inner(mu.bracket(Vector(n1.col(b)), Vector(n1.col(a))), z);
  out.full = n1 * out.block * n1.transpose() * gm;
  return out;
}

HTypeClass htype_classify(const SkewTensor& mu, const Metric& g, int random_samples, unsigned seed,
                          double tol) {
  const TwoStepSplit split = two_step_split(mu, g);
  const Matrix& n2 = split.n2;
  std::vector<Vector> samples;
  for (Eigen::Index c = 0; c < n2.cols(); ++c) samples.emplace_back(n2.col(c));
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  for (int s = 0; s < random_samples; ++s) {
    Vector w(n2.cols());
    for (Eigen::Index c = 0; c < w.size(); ++c) w(c) = normal(rng);
    samples.emplace_back(n2 * w);
  }
  bool htype = true;
  for (const Vector& z : samples) {
    const JOperator j = j_operator(mu, g, z);
    const Matrix sq = j.block * j.block;
    const auto k = static_cast<double>(sq.rows());
    const double c = sq.trace() / k;
    const double scale = std::max(j.block.squaredNorm(), std::numeric_limits<double>::min());
    const Matrix dev = sq - c * Matrix::Identity(sq.rows(), sq.cols());
    if (dev.norm() > tol * scale) return HTypeClass::Neither;
    if (!(c < -tol * scale) || j.block.squaredNorm() == 0.0) return HTypeClass::Neither;
    const double zz = g.inner(z, z);
    if (std::abs(c + zz) > tol * std::max(1.0, zz)) htype = false;
  }
  return htype ? HTypeClass::HType : HTypeClass::ModifiedHType;
}

}  // namespace nilmetric
