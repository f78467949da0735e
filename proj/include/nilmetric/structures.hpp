#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace nilmetric {

enum class StructureClass { None, Symplectic, Complex, Hypercomplex };

std::string_view to_string(StructureClass c);

/// Geometric structure gamma on the fixed n-dimensional space.
///
/// Symplectic carries the Gram matrix Omega of omega (omega(X,Y) = X^T Omega Y);
/// Complex carries J; Hypercomplex carries (J1, J2, J3). Factories validate
/// the algebraic identities and dimension parity.
class Structure {
 public:
  static Structure none(int n);
  static Structure symplectic(Matrix omega);
  static Structure complex(Matrix j);
  static Structure hypercomplex(Matrix j1, Matrix j2, Matrix j3);

  StructureClass kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }

  const Matrix& omega() const;                  // WrongTag unless Symplectic
  const Matrix& j() const;                      // WrongTag unless Complex
  const std::array<Matrix, 3>& js() const;      // WrongTag unless Hypercomplex

  /// Complex structures that must be integrable/commuted with: {J} or {J1,J2,J3}.
  std::vector<Matrix> complex_operators() const;

  /// Frobenius size used for relative residuals.
  double scale() const;

  /// Pushes gamma into the G-orthonormal frame. For Symplectic the result's
  /// Omega equals J_G and is rescaled so that J_G^2 = -I holds whenever G is
  /// compatible up to a positive factor.
  Structure to_frame(const Metric& g) const;

  /// True when every operator of gamma maps span(e_0..e_{n1-1}) and its
  /// complement into themselves.
  bool preserves_split(int n1) const;

 private:
  Structure(StructureClass kind, int dim) : kind_(kind), dim_(dim) {}

  StructureClass kind_ = StructureClass::None;
  int dim_ = 0;
  Matrix omega_;
  Matrix j_;
  std::array<Matrix, 3> js_;
};

inline constexpr double kStructureTol = 1e-8;

/// Zero iff G is compatible with gamma.
///   Complex:      ||J^T G J - G||
///   Hypercomplex: max_i ||J_i^T G J_i - G||
///   Symplectic:   ||(G^{-1} Omega)^2 + I||
double compatibility_residual(const Structure& gamma, const Metric& g);

/// Scale-free variant: zero iff some positive multiple of G is compatible.
double compatibility_residual_up_to_scale(const Structure& gamma, const Metric& g);

/// Integrability defect as a vector, linear in mu. Symplectic: cyclic sums
/// over i<j<k. Complex: Nijenhuis defects over i<j. Hypercomplex: the three
/// Complex blocks concatenated.
Vector integrability_residual_vector(const Structure& gamma, const SkewTensor& mu);

/// Norm of the defect (max over J_i for Hypercomplex).
double integrability_residual(const Structure& gamma, const SkewTensor& mu);

/// raw / (1 + ||mu|| ||gamma||); pass/fail threshold kStructureTol.
double integrability_relative(const Structure& gamma, const SkewTensor& mu);

/// mu(J.,J.) - mu over i<j (concatenated over J_i).
Vector abelian_residual_vector(const Structure& gamma, const SkewTensor& mu);

/// ||mu(J.,J.) - mu||, max over J_i; WrongTag unless Complex/Hypercomplex.
double abelian_residual(const Structure& gamma, const SkewTensor& mu);

/// Symmetric part p_gamma of the structure algebra at G.
struct StructureAlgebra {
  /// G-self-adjoint maps, orthonormal for tr(AB); Frobenius-orthonormal
  /// symmetric matrices when G = I.
  std::vector<Matrix> sym_basis;
  int skew_dim = 0;
};

StructureAlgebra structure_algebra(const Structure& gamma, const Metric& g);

/// Orthogonal projection onto p_gamma for the trace inner product using the
/// closed forms ½(S+JSJ), ½(S-JSJ), ¼(S-ΣJ_iSJ_i) in the G-orthonormal frame.
/// IncompatibleMetric when the scale-free compatibility residual exceeds
/// compat_tol (integrators evaluate slightly off the compatible set).
Matrix invariant_projection(const Structure& gamma, const Metric& g, const Matrix& s,
                            double compat_tol = kStructureTol);

/// Same projection by expansion against a StructureAlgebra basis.
Matrix basis_projection(const StructureAlgebra& alg, const Matrix& s);

/// Projection of an arbitrary matrix onto the Lie algebra g_gamma, for gamma
/// already in an orthonormal frame (G = I, compatible).
Matrix structure_lie_projection(const Structure& frame_gamma, const Matrix& a);

/// Ambient subspace of V for integrable_subspace_dim.
struct Ambient {
  enum class Kind { Full, TwoStep };
  Kind kind = Kind::Full;
  int n1 = 0;
  int n2 = 0;

  static Ambient full(int n) { return {Kind::Full, n, 0}; }
  static Ambient two_step(int n1, int n2) { return {Kind::TwoStep, n1, n2}; }
  int dim() const { return kind == Kind::Full ? n1 : n1 + n2; }
};

/// Coordinate basis of the ambient space as tensors on R^dim.
std::vector<SkewTensor> ambient_basis(const Ambient& ambient);

/// Integrability (and optionally abelian) constraints evaluated on the
/// ambient basis, one column per basis element.
Matrix ambient_constraints(const Structure& gamma, const Ambient& ambient, bool abelian);

/// dim of {mu in ambient : integrable (and abelian)}; SplitMismatch when a
/// TwoStep ambient is not preserved by gamma.
int integrable_subspace_dim(const Structure& gamma, const Ambient& ambient, bool abelian = false);

}  // namespace nilmetric
