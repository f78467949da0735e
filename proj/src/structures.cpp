#include "nilmetric/structures.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/error.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace nilmetric {

namespace {

constexpr double kIdentityTol = 1e-10;

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a nonempty square matrix");
  if (!m.allFinite()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
}

void require_square_minus_identity(const Matrix& j, const char* what) {
  const auto n = j.rows();
  const double dev = (j * j + Matrix::Identity(n, n)).norm();
  if (dev > kIdentityTol * (1.0 + j.squaredNorm()))
    throw Error(ErrorKind::InvalidArgument, std::string(what) + " does not square to -I");
}

/// Nijenhuis defect of J on mu, one n-vector per pair i<j.
Vector nijenhuis_vector(const Matrix& j, const SkewTensor& mu) {
  const int n = mu.dim();
  Vector out(static_cast<Eigen::Index>(mu.pair_count()) * n);
  Eigen::Index row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Vector xa = Vector::Unit(n, a);
      const Vector xb = Vector::Unit(n, b);
      const Vector jxa = j.col(a);
      const Vector jxb = j.col(b);
      const Vector d = mu.bracket(jxa, jxb) - mu.bracket(a, b) - j * mu.bracket(jxa, xb) -
                       j * mu.bracket(xa, jxb);
      out.segment(row, n) = d;
      row += n;
    }
  }
  return out;
}

Vector abelian_vector_single(const Matrix& j, const SkewTensor& mu) {
  const int n = mu.dim();
  Vector out(static_cast<Eigen::Index>(mu.pair_count()) * n);
  Eigen::Index row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      out.segment(row, n) = mu.bracket(Vector(j.col(a)), Vector(j.col(b))) - mu.bracket(a, b);
      row += n;
    }
  }
  return out;
}

Vector closedness_vector(const Matrix& omega, const SkewTensor& mu) {
  const int n = mu.dim();
  std::vector<double> vals;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const double s = mu.bracket(i, j).dot(omega.col(k)) + mu.bracket(j, k).dot(omega.col(i)) +
                         mu.bracket(k, i).dot(omega.col(j));
        vals.push_back(s);
      }
    }
  }
  return Eigen::Map<const Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", r);
  return buf;
}

void require_compatible_up_to_scale(const Structure& gamma, const Metric& g, double tol = kStructureTol) {
  if (g.dim() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "metric and structure dimensions differ");
  const double r = compatibility_residual_up_to_scale(gamma, g);
  if (!(r <= tol))
    throw Error(ErrorKind::IncompatibleMetric,
                "metric is not compatible with the structure (residual " + format_residual(r) + ")");
}

/// Linear constraint A.gamma = 0 in an orthonormal frame, stacked.
Vector structure_constraint(const Structure& frame_gamma, const Matrix& a) {
  const auto n = a.rows();
  switch (frame_gamma.kind()) {
    case StructureClass::None:
      return Vector(0);
    case StructureClass::Symplectic: {
      const Matrix& om = frame_gamma.omega();
      const Matrix c = a.transpose() * om + om * a;
      return Eigen::Map<const Vector>(c.data(), n * n);
    }
    case StructureClass::Complex:
    case StructureClass::Hypercomplex: {
      const auto ops = frame_gamma.complex_operators();
      Vector out(static_cast<Eigen::Index>(ops.size()) * n * n);
      for (std::size_t i = 0; i < ops.size(); ++i) {
        const Matrix c = a * ops[i] - ops[i] * a;
        out.segment(static_cast<Eigen::Index>(i) * n * n, n * n) = Eigen::Map<const Vector>(c.data(), n * n);
      }
      return out;
    }
  }
  return Vector(0);
}

Matrix closed_form_projection(const Structure& frame_gamma, const Matrix& s) {
  switch (frame_gamma.kind()) {
    case StructureClass::None:
      return s;
    case StructureClass::Symplectic: {
      const Matrix& j = frame_gamma.omega();
      return 0.5 * (s + j * s * j);
    }
    case StructureClass::Complex: {
      const Matrix& j = frame_gamma.j();
      return 0.5 * (s - j * s * j);
    }
    case StructureClass::Hypercomplex: {
      Matrix acc = s;
      for (const Matrix& j : frame_gamma.js()) acc -= j * s * j;
      return 0.25 * acc;
    }
  }
  return s;
}

bool block_diagonal(const Matrix& m, int n1) {
  const auto n = m.rows();
  const auto n2 = n - n1;
  const double off = m.topRightCorner(n1, n2).norm() + m.bottomLeftCorner(n2, n1).norm();
  return off <= kIdentityTol * (1.0 + m.norm());
}

}  // namespace

std::string_view to_string(StructureClass c) {
  switch (c) {
    case StructureClass::None: return "none";
    case StructureClass::Symplectic: return "symplectic";
    case StructureClass::Complex: return "complex";
    case StructureClass::Hypercomplex: return "hypercomplex";
  }
  return "none";
}

Structure Structure::none(int n) {
  if (n <= 0) throw Error(ErrorKind::InvalidArgument, "dimension must be positive");
  return Structure(StructureClass::None, n);
}

Structure Structure::symplectic(Matrix omega) {
  require_square(omega, "omega");
  const auto n = static_cast<int>(omega.rows());
  if (n % 2 != 0) throw Error(ErrorKind::DimensionParity, "symplectic structures need even dimension");
  if ((omega + omega.transpose()).norm() > kIdentityTol * (1.0 + omega.norm()))
    throw Error(ErrorKind::InvalidArgument, "omega is not skew-symmetric");
  Eigen::JacobiSVD<Matrix> svd(omega);
  const Vector& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > 1e-12 * sv(0))) throw Error(ErrorKind::InvalidArgument, "omega is degenerate");
  Structure s(StructureClass::Symplectic, n);
  s.omega_ = 0.5 * (omega - omega.transpose());
  return s;
}

Structure Structure::complex(Matrix j) {
  require_square(j, "J");
  const auto n = static_cast<int>(j.rows());
  if (n % 2 != 0) throw Error(ErrorKind::DimensionParity, "complex structures need even dimension");
  require_square_minus_identity(j, "J");
  Structure s(StructureClass::Complex, n);
  s.j_ = std::move(j);
  return s;
}

Structure Structure::hypercomplex(Matrix j1, Matrix j2, Matrix j3) {
  require_square(j1, "J1");
  require_square(j2, "J2");
  require_square(j3, "J3");
  const auto n = static_cast<int>(j1.rows());
  if (j2.rows() != n || j3.rows() != n)
    throw Error(ErrorKind::DimensionMismatch, "J1, J2, J3 dimensions differ");
  if (n % 4 != 0) throw Error(ErrorKind::DimensionParity, "hypercomplex structures need dimension divisible by 4");
  require_square_minus_identity(j1, "J1");
  require_square_minus_identity(j2, "J2");
  require_square_minus_identity(j3, "J3");
  const double tol = kIdentityTol * (1.0 + j1.norm() * j2.norm());
  if ((j1 * j2 - j3).norm() > tol || (j2 * j1 + j3).norm() > tol)
    throw Error(ErrorKind::InvalidArgument, "J1, J2, J3 violate the quaternion identities");
  Structure s(StructureClass::Hypercomplex, n);
  s.js_ = {std::move(j1), std::move(j2), std::move(j3)};
  return s;
}

const Matrix& Structure::omega() const {
  if (kind_ != StructureClass::Symplectic) throw Error(ErrorKind::WrongTag, "structure is not symplectic");
  return omega_;
}

const Matrix& Structure::j() const {
  if (kind_ != StructureClass::Complex) throw Error(ErrorKind::WrongTag, "structure is not complex");
  return j_;
}

const std::array<Matrix, 3>& Structure::js() const {
  if (kind_ != StructureClass::Hypercomplex) throw Error(ErrorKind::WrongTag, "structure is not hypercomplex");
  return js_;
}

std::vector<Matrix> Structure::complex_operators() const {
  switch (kind_) {
    case StructureClass::Complex: return {j_};
    case StructureClass::Hypercomplex: return {js_[0], js_[1], js_[2]};
    default: return {};
  }
}

double Structure::scale() const {
  switch (kind_) {
    case StructureClass::None: return 0.0;
    case StructureClass::Symplectic: return omega_.norm();
    case StructureClass::Complex: return j_.norm();
    case StructureClass::Hypercomplex:
      return std::max({js_[0].norm(), js_[1].norm(), js_[2].norm()});
  }
  return 0.0;
}

Structure Structure::to_frame(const Metric& g) const {
  if (g.dim() != dim_) throw Error(ErrorKind::DimensionMismatch, "metric and structure dimensions differ");
  Structure s(kind_, dim_);
  switch (kind_) {
    case StructureClass::None:
      break;
    case StructureClass::Symplectic: {
      // At the identity metric J equals the Gram matrix of omega.
      Matrix jf = g.form_to_frame(omega_);
      const double tr = (jf * jf).trace();
      if (tr < 0.0) jf *= std::sqrt(static_cast<double>(dim_) / -tr);
      s.omega_ = 0.5 * (jf - jf.transpose());
      break;
    }
    case StructureClass::Complex:
      s.j_ = g.to_frame(j_);
      break;
    case StructureClass::Hypercomplex:
      for (std::size_t i = 0; i < 3; ++i) s.js_[i] = g.to_frame(js_[i]);
      break;
  }
  return s;
}

bool Structure::preserves_split(int n1) const {
  switch (kind_) {
    case StructureClass::None: return true;
    case StructureClass::Symplectic: return block_diagonal(omega_, n1);
    case StructureClass::Complex: return block_diagonal(j_, n1);
    case StructureClass::Hypercomplex:
      return block_diagonal(js_[0], n1) && block_diagonal(js_[1], n1) && block_diagonal(js_[2], n1);
  }
  return true;
}

double compatibility_residual(const Structure& gamma, const Metric& g) {
  if (g.dim() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "metric and structure dimensions differ");
  const Matrix& gm = g.matrix();
  const auto n = gm.rows();
  switch (gamma.kind()) {
    case StructureClass::None:
      return 0.0;
    case StructureClass::Symplectic: {
      const Matrix jg = gm.llt().solve(gamma.omega());
      return (jg * jg + Matrix::Identity(n, n)).norm();
    }
    case StructureClass::Complex: {
      const Matrix& j = gamma.j();
      return (j.transpose() * gm * j - gm).norm();
    }
    case StructureClass::Hypercomplex: {
      double worst = 0.0;
      for (const Matrix& j : gamma.js()) worst = std::max(worst, (j.transpose() * gm * j - gm).norm());
      return worst;
    }
  }
  return 0.0;
}

double compatibility_residual_up_to_scale(const Structure& gamma, const Metric& g) {
  if (g.dim() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "metric and structure dimensions differ");
  const Matrix& gm = g.matrix();
  const auto n = gm.rows();
  switch (gamma.kind()) {
    case StructureClass::None:
      return 0.0;
    case StructureClass::Symplectic: {
      const Matrix jg = gm.llt().solve(gamma.omega());
      const Matrix sq = jg * jg;
      const double tr = sq.trace();
      if (!(tr < 0.0)) return std::numeric_limits<double>::infinity();
      return ((static_cast<double>(n) / -tr) * sq + Matrix::Identity(n, n)).norm();
    }
    case StructureClass::Complex:
    case StructureClass::Hypercomplex:
      return compatibility_residual(gamma, g) / gm.norm();
  }
  return 0.0;
}

Vector integrability_residual_vector(const Structure& gamma, const SkewTensor& mu) {
  if (mu.dim() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "tensor and structure dimensions differ");
  switch (gamma.kind()) {
    case StructureClass::None:
      return Vector(0);
    case StructureClass::Symplectic:
      return closedness_vector(gamma.omega(), mu);
    case StructureClass::Complex:
      return nijenhuis_vector(gamma.j(), mu);
    case StructureClass::Hypercomplex: {
      const auto& js = gamma.js();
      const Vector a = nijenhuis_vector(js[0], mu);
      Vector out(3 * a.size());
      out << a, nijenhuis_vector(js[1], mu), nijenhuis_vector(js[2], mu);
      return out;
    }
  }
  return Vector(0);
}

double integrability_residual(const Structure& gamma, const SkewTensor& mu) {
  const Vector v = integrability_residual_vector(gamma, mu);
  if (gamma.kind() != StructureClass::Hypercomplex) return v.norm();
  const auto block = v.size() / 3;
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) worst = std::max(worst, v.segment(i * block, block).norm());
  return worst;
}

double integrability_relative(const Structure& gamma, const SkewTensor& mu) {
  return integrability_residual(gamma, mu) / (1.0 + norm(mu) * gamma.scale());
}

Vector abelian_residual_vector(const Structure& gamma, const SkewTensor& mu) {
  if (gamma.kind() != StructureClass::Complex && gamma.kind() != StructureClass::Hypercomplex)
    throw Error(ErrorKind::WrongTag, "abelian residual needs a complex or hypercomplex structure");
  if (mu.dim() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "tensor and structure dimensions differ");
  const auto ops = gamma.complex_operators();
  std::vector<Vector> parts;
  Eigen::Index total = 0;
  for (const Matrix& j : ops) {
    parts.push_back(abelian_vector_single(j, mu));
    total += parts.back().size();
  }
  Vector out(total);
  Eigen::Index at = 0;
  for (const Vector& p : parts) {
    out.segment(at, p.size()) = p;
    at += p.size();
  }
  return out;
}

double abelian_residual(const Structure& gamma, const SkewTensor& mu) {
  const Vector v = abelian_residual_vector(gamma, mu);
  const auto count = static_cast<Eigen::Index>(gamma.complex_operators().size());
  const auto block = v.size() / count;
  double worst = 0.0;
  for (Eigen::Index i = 0; i < count; ++i) worst = std::max(worst, v.segment(i * block, block).norm());
  return worst;
}

StructureAlgebra structure_algebra(const Structure& gamma, const Metric& g) {
  require_compatible_up_to_scale(gamma, g);
  const int n = gamma.dim();
  const Structure frame = gamma.to_frame(g);

  const auto sym = symmetric_basis(n);
  StructureAlgebra alg;
  if (gamma.kind() == StructureClass::None) {
    for (const Matrix& e : sym) alg.sym_basis.push_back(g.from_frame(e));
    alg.skew_dim = n * (n - 1) / 2;
    return alg;
  }

  const auto rows = structure_constraint(frame, Matrix::Zero(n, n)).size();
  Matrix cons(rows, static_cast<Eigen::Index>(sym.size()));
  for (std::size_t c = 0; c < sym.size(); ++c)
    cons.col(static_cast<Eigen::Index>(c)) = structure_constraint(frame, sym[c]);
  const Matrix ns = nullspace(cons);
  // sym[] is not trace-orthonormal, so re-orthonormalize in the frame
  std::vector<Matrix> frame_basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) {
    Matrix a = Matrix::Zero(n, n);
    for (std::size_t b = 0; b < sym.size(); ++b) a += ns(static_cast<Eigen::Index>(b), c) * sym[b];
    for (int pass = 0; pass < 2; ++pass)
      for (const Matrix& q : frame_basis) a -= (a * q).trace() * q;
    const double an = a.norm();
    if (an <= 1e-12) continue;
    frame_basis.push_back(a / an);
  }
  for (const Matrix& a : frame_basis) alg.sym_basis.push_back(g.from_frame(a));

  std::vector<Matrix> skew;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -1.0;
      skew.push_back(e);
    }
  }
  if (!skew.empty()) {
    Matrix kc(rows, static_cast<Eigen::Index>(skew.size()));
    for (std::size_t c = 0; c < skew.size(); ++c)
      kc.col(static_cast<Eigen::Index>(c)) = structure_constraint(frame, skew[c]);
    alg.skew_dim = static_cast<int>(nullspace(kc).cols());
  }
  return alg;
}

Matrix invariant_projection(const Structure& gamma, const Metric& g, const Matrix& s, double compat_tol) {
  require_compatible_up_to_scale(gamma, g, compat_tol);
  if (s.rows() != gamma.dim() || s.cols() != gamma.dim())
    throw Error(ErrorKind::DimensionMismatch, "operator and structure dimensions differ");
  const Matrix sf = g.to_frame(s);
  if ((sf - sf.transpose()).norm() > 1e-8 * (1.0 + sf.norm()))
    throw Error(ErrorKind::InvalidArgument, "operator is not self-adjoint for the metric");
  return g.from_frame(closed_form_projection(gamma.to_frame(g), symmetrize(sf)));
}

Matrix basis_projection(const StructureAlgebra& alg, const Matrix& s) {
  Matrix out = Matrix::Zero(s.rows(), s.cols());
  for (const Matrix& b : alg.sym_basis) out += (s * b).trace() * b;
  return out;
}

Matrix structure_lie_projection(const Structure& frame_gamma, const Matrix& a) {
  switch (frame_gamma.kind()) {
    case StructureClass::None:
      return a;
    case StructureClass::Symplectic: {
      // A ∈ sp iff J A is symmetric.
      const Matrix& j = frame_gamma.omega();
      return -j * symmetrize(j * a);
    }
    case StructureClass::Complex: {
      const Matrix& j = frame_gamma.j();
      return 0.5 * (a - j * a * j);
    }
    case StructureClass::Hypercomplex: {
      Matrix acc = a;
      for (const Matrix& j : frame_gamma.js()) acc -= j * a * j;
      return 0.25 * acc;
    }
  }
  return a;
}

std::vector<SkewTensor> ambient_basis(const Ambient& ambient) {
  std::vector<SkewTensor> basis;
  const int n = ambient.dim();
  if (ambient.kind == Ambient::Kind::Full) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          SkewTensor t(n);
          t.set(i, j, k, 1.0);
          basis.push_back(std::move(t));
        }
    return basis;
  }
  for (int i = 0; i < ambient.n1; ++i)
    for (int j = i + 1; j < ambient.n1; ++j)
      for (int k = ambient.n1; k < n; ++k) {
        SkewTensor t(n);
        t.set(i, j, k, 1.0);
        basis.push_back(std::move(t));
      }
  return basis;
}

Matrix ambient_constraints(const Structure& gamma, const Ambient& ambient, bool abelian) {
  if (gamma.dim() != ambient.dim())
    throw Error(ErrorKind::DimensionMismatch, "ambient and structure dimensions differ");
  if (ambient.kind == Ambient::Kind::TwoStep && !gamma.preserves_split(ambient.n1))
    throw Error(ErrorKind::SplitMismatch, "structure does not preserve the two-step splitting");
  if (abelian && gamma.kind() != StructureClass::Complex && gamma.kind() != StructureClass::Hypercomplex)
    throw Error(ErrorKind::WrongTag, "abelian constraint needs a complex or hypercomplex structure");
  const auto basis = ambient_basis(ambient);
  std::vector<Vector> cols;
  Eigen::Index rows = 0;
  for (const SkewTensor& t : basis) {
    Vector v = integrability_residual_vector(gamma, t);
    if (abelian) {
      const Vector a = abelian_residual_vector(gamma, t);
      Vector both(v.size() + a.size());
      both << v, a;
      v = std::move(both);
    }
    rows = v.size();
    cols.push_back(std::move(v));
  }
  Matrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) m.col(static_cast<Eigen::Index>(c)) = cols[c];
  return m;
}

int integrable_subspace_dim(const Structure& gamma, const Ambient& ambient, bool abelian) {
  const Matrix m = ambient_constraints(gamma, ambient, abelian);
  if (m.rows() == 0) return static_cast<int>(m.cols());
  return static_cast<int>(m.cols()) - rank(m);
}

}  // namespace nilmetric
