#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"
#include "nilmetric/structures.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilmetric {

/// Validation attached to every catalog point; nothing is enforced.
struct Validation {
  double jacobi = 0.0;
  bool jacobi_ok = false;
  std::optional<int> nilpotency_index;
  double compatibility = 0.0;
  double integrability = 0.0;
  double integrability_relative = 0.0;
  std::optional<double> constraint;  // family polynomial, when there is one
  bool valid = false;
};

struct FamilyPoint {
  std::string family_id;
  std::vector<std::pair<std::string, double>> params;
  SkewTensor bracket;
  Structure structure;
  Metric metric;
  Validation validation;
};

Structure standard_structure(StructureClass cls, int n);

/// mu(X1,X2)=aX3, mu(X1,X3)=bX4, mu(X1,X4)=cX5, mu(X1,X5)=dX6,
/// mu(X2,X3)=eX5, mu(X2,X4)=fX6 with the standard omega on R^6.
FamilyPoint symplectic_family(double a, double b, double c, double d, double e, double f);

/// mu_xy = mu(x, 1, x+y, 1, 1, y); constraint x^2 + y^2 + xy - 1.
FamilyPoint m26(double x, double y);

/// Point (x,y) = (cos th - sin th / sqrt3, 2 sin th / sqrt3) of the ellipse; th in [0, pi/3]
/// covers the arc x, y >= 0.
std::pair<double, double> m26_ellipse_point(double theta);

/// Complex curve mu_t on span(X1..X4, Z1, Z2), s = sqrt(2 + t^2 + (2-t)^2).
FamilyPoint complex_curve(double t);

/// mu_rst on span(X1..X4, Z1..Z4); constraint r^2+s^2+t^2-r-s-t+1/2.
FamilyPoint hypercomplex_family(double r, double s, double t);

/// Point of the constraint sphere |(r,s,t) - (1/2,1/2,1/2)| = 1/2 from spherical angles.
std::vector<double> hypercomplex_surface_point(double polar, double azimuth);

/// Heisenberg algebra of dimension 2m+1: mu(X_i, X_{m+i}) = X_{2m+1}.
FamilyPoint heisenberg(int dim = 3);

/// W = Lambda^2 n1* (x) n2 for the 8-dimensional hypercomplex setup.
struct HypercomplexAmbient {
  Ambient ambient;
  Structure structure;
  std::vector<SkewTensor> basis;   // 24 coordinate tensors
  Matrix integrability;            // constraint columns per basis element
  Matrix integrability_abelian;
  Matrix wh;                       // orthonormal coordinates of W_h (columns)
  Matrix wah;                      // orthonormal coordinates of W_ah

  int dim() const { return static_cast<int>(basis.size()); }
  SkewTensor from_coordinates(const Vector& coords) const;
  /// Gaussian draw projected onto W_h (or W_ah).
  SkewTensor sample(std::uint64_t seed, bool abelian = false) const;
};

HypercomplexAmbient hypercomplex_ambient();

/// Ids: "m26" (x,y), "iwasawa-curve" (t), "hc-g3" (r,s,t), "heisenberg" (n).
std::vector<std::string> catalog_ids();
FamilyPoint catalog_get(const std::string& id, const std::map<std::string, double>& params = {});

}  // namespace nilmetric
