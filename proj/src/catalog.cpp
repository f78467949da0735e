#include "nilmetric/catalog.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/error.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace nilmetric {

namespace {

constexpr double kValidTol = 1e-10;

Matrix quaternion_block(int which) {
  Matrix j = Matrix::Zero(4, 4);
  switch (which) {
    case 1:
      j(0, 1) = -1; j(1, 0) = 1; j(2, 3) = -1; j(3, 2) = 1;
      break;
    case 2:
      j(0, 2) = -1; j(1, 3) = 1; j(2, 0) = 1; j(3, 1) = -1;
      break;
    default:
      j(0, 3) = -1; j(1, 2) = -1; j(2, 1) = 1; j(3, 0) = 1;
      break;
  }
  return j;
}

Validation validate(const SkewTensor& mu, const Structure& gamma, const Metric& g, std::optional<double> constraint) {
  Validation v;
  v.jacobi = jacobi_residual(mu);
  v.jacobi_ok = satisfies_jacobi(mu);
  try {
    v.nilpotency_index = nilpotency_index(mu);
  } catch (const Error&) {
  }
  v.compatibility = compatibility_residual(gamma, g);
  v.integrability = integrability_residual(gamma, mu);
  v.integrability_relative = integrability_relative(gamma, mu);
  v.constraint = constraint;
  v.valid = v.jacobi_ok && v.nilpotency_index.has_value() && v.compatibility <= kValidTol &&
            v.integrability_relative <= kValidTol && (!constraint || std::abs(*constraint) <= 1e-12);
  return v;
}

FamilyPoint make_point(std::string id, std::vector<std::pair<std::string, double>> params, SkewTensor mu,
                       Structure gamma, std::optional<double> constraint) {
  Metric g = Metric::identity(mu.dim());
  Validation v = validate(mu, gamma, g, constraint);
  return FamilyPoint{std::move(id), std::move(params), std::move(mu), std::move(gamma), std::move(g), v};
}

double param(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& p, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* name : known) ok = ok || k == name;
    if (!ok) throw Error(ErrorKind::InvalidArgument, "unknown parameter '" + k + "'");
  }
}

}  // namespace

Structure standard_structure(StructureClass cls, int n) {
  switch (cls) {
    case StructureClass::None:
      return Structure::none(n);
    case StructureClass::Symplectic: {
      if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::DimensionParity, "symplectic needs even dimension");
      // Gram matrix equal to the displayed J: pairs i <-> n+1-i.
      Matrix om = Matrix::Zero(n, n);
      for (int i = 0; i < n / 2; ++i) {
        om(i, n - 1 - i) = -1.0;
        om(n - 1 - i, i) = 1.0;
      }
      return Structure::symplectic(om);
    }
    case StructureClass::Complex: {
      if (n <= 0 || n % 2 != 0) throw Error(ErrorKind::DimensionParity, "complex needs even dimension");
      Matrix j = Matrix::Zero(n, n);
      for (int b = 0; b < n; b += 2) {
        j(b, b + 1) = -1.0;
        j(b + 1, b) = 1.0;
      }
      return Structure::complex(j);
    }
    case StructureClass::Hypercomplex: {
      if (n <= 0 || n % 4 != 0) throw Error(ErrorKind::DimensionParity, "hypercomplex needs dimension divisible by 4");
      std::array<Matrix, 3> js;
      for (int w = 0; w < 3; ++w) {
        js[static_cast<std::size_t>(w)] = Matrix::Zero(n, n);
        for (int b = 0; b < n; b += 4) js[static_cast<std::size_t>(w)].block(b, b, 4, 4) = quaternion_block(w + 1);
      }
      return Structure::hypercomplex(js[0], js[1], js[2]);
    }
  }
  return Structure::none(n);
}

FamilyPoint symplectic_family(double a, double b, double c, double d, double e, double f) {
  SkewTensor mu(6);
  mu.set(0, 1, 2, a);
  mu.set(0, 2, 3, b);
  mu.set(0, 3, 4, c);
  mu.set(0, 4, 5, d);
  mu.set(1, 2, 4, e);
  mu.set(1, 3, 5, f);
  return make_point("symplectic-family", {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"e", e}, {"f", f}}, std::move(mu),
                    standard_structure(StructureClass::Symplectic, 6), std::nullopt);
}

FamilyPoint m26(double x, double y) {
  FamilyPoint p = symplectic_family(x, 1.0, x + y, 1.0, 1.0, y);
  p.family_id = "m26";
  p.params = {{"x", x}, {"y", y}};
  p.validation = validate(p.bracket, p.structure, p.metric, x * x + y * y + x * y - 1.0);
  return p;
}

std::pair<double, double> m26_ellipse_point(double theta) {
  const double r3 = std::sqrt(3.0);
  return {std::cos(theta) - std::sin(theta) / r3, 2.0 * std::sin(theta) / r3};
}

FamilyPoint complex_curve(double t) {
  const double s = std::sqrt(2.0 + t * t + (2.0 - t) * (2.0 - t));
  SkewTensor mu(6);
  mu.set(0, 2, 5, -t * s);
  mu.set(1, 2, 4, s);
  mu.set(0, 3, 4, s);
  mu.set(1, 3, 5, s * (2.0 - t));
  return make_point("iwasawa-curve", {{"t", t}}, std::move(mu), standard_structure(StructureClass::Complex, 6),
                    std::nullopt);
}

FamilyPoint hypercomplex_family(double r, double s, double t) {
  SkewTensor mu(8);
  mu.set(0, 1, 5, r);
  mu.set(0, 2, 6, s);
  mu.set(0, 3, 7, t);
  mu.set(1, 2, 7, 1.0 - t);
  mu.set(1, 3, 6, -(1.0 - s));
  mu.set(2, 3, 5, 1.0 - r);
  const double constraint = r * r + s * s + t * t - r - s - t + 0.5;
  return make_point("hc-g3", {{"r", r}, {"s", s}, {"t", t}}, std::move(mu),
                    standard_structure(StructureClass::Hypercomplex, 8), constraint);
}

std::vector<double> hypercomplex_surface_point(double polar, double azimuth) {
  return {0.5 + 0.5 * std::sin(polar) * std::cos(azimuth), 0.5 + 0.5 * std::sin(polar) * std::sin(azimuth),
          0.5 + 0.5 * std::cos(polar)};
}

FamilyPoint heisenberg(int dim) {
  if (dim < 3 || dim % 2 == 0) throw Error(ErrorKind::InvalidArgument, "Heisenberg dimension must be odd and >= 3");
  const int m = (dim - 1) / 2;
  SkewTensor mu(dim);
  for (int i = 0; i < m; ++i) mu.set(i, m + i, dim - 1, 1.0);
  return make_point("heisenberg", {{"n", static_cast<double>(dim)}}, std::move(mu), Structure::none(dim),
                    std::nullopt);
}

SkewTensor HypercomplexAmbient::from_coordinates(const Vector& coords) const {
  SkewTensor mu(ambient.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    SkewTensor term = basis[i];
    term *= coords(static_cast<Eigen::Index>(i));
    mu += term;
  }
  return mu;
}

SkewTensor HypercomplexAmbient::sample(std::uint64_t seed, bool abelian) const {
  const Matrix& w = abelian ? wah : wh;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector z(w.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = normal(rng);
  return from_coordinates(w * z);
}

HypercomplexAmbient hypercomplex_ambient() {
  HypercomplexAmbient amb{Ambient::two_step(4, 4), standard_structure(StructureClass::Hypercomplex, 8), {}, {}, {}, {}, {}};
  amb.basis = ambient_basis(amb.ambient);
  amb.integrability = ambient_constraints(amb.structure, amb.ambient, false);
  amb.integrability_abelian = ambient_constraints(amb.structure, amb.ambient, true);
  amb.wh = nullspace(amb.integrability);
  amb.wah = nullspace(amb.integrability_abelian);
  return amb;
}

std::vector<std::string> catalog_ids() { return {"m26", "iwasawa-curve", "hc-g3", "heisenberg"}; }

FamilyPoint catalog_get(const std::string& id, const std::map<std::string, double>& params) {
  if (id == "m26") {
    reject_unknown(params, {"x", "y"});
    return m26(param(params, "x", 1.0), param(params, "y", 0.0));
  }
  if (id == "iwasawa-curve") {
    reject_unknown(params, {"t"});
    return complex_curve(param(params, "t", 1.0));
  }
  if (id == "hc-g3") {
    reject_unknown(params, {"r", "s", "t"});
    const auto def = hypercomplex_surface_point(std::acos(1.0 / std::sqrt(3.0)), std::numbers::pi / 4.0);
    return hypercomplex_family(param(params, "r", def[0]), param(params, "s", def[1]), param(params, "t", def[2]));
  }
  if (id == "heisenberg") {
    reject_unknown(params, {"n"});
    const double n = param(params, "n", 3.0);
    if (n != std::floor(n)) throw Error(ErrorKind::InvalidArgument, "n must be an integer");
    return heisenberg(static_cast<int>(n));
  }
  throw Error(ErrorKind::InvalidArgument, "unknown catalog id '" + id + "'");
}

}  // namespace nilmetric
