#include "nilmetric/curvature.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/error.hpp"

namespace nilmetric {

Matrix ricci_identity(const SkewTensor& mu) {
  const int n = mu.dim();
  Matrix ric = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double first = 0.0;
      double second = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          first += mu(a, i, j) * mu(b, i, j);
          second += mu(i, j, a) * mu(i, j, b);
        }
      }
      ric(a, b) = -0.5 * first + 0.25 * second;
      ric(b, a) = ric(a, b);
    }
  }
  return ric;
}

Matrix ricci_operator(const SkewTensor& mu, const Metric& g) {
  if (mu.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "tensor and metric dimensions differ");
  if (g.is_identity()) return ricci_identity(mu);
  return g.from_frame(ricci_identity(act(g.transport(), mu)));
}

double scalar_curvature(const SkewTensor& mu, const Metric& g) { return ricci_operator(mu, g).trace(); }

Matrix moment_map(const SkewTensor& mu) {
  const int n = mu.dim();
  std::vector<Matrix> slices(static_cast<std::size_t>(n), Matrix::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) slices[static_cast<std::size_t>(k)](i, j) = mu(i, j, k);

  Matrix m = Matrix::Zero(n, n);
  for (const Matrix& s : slices) m.noalias() -= 4.0 * s * s.transpose();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      m(a, b) += 2.0 * slices[static_cast<std::size_t>(a)].cwiseProduct(slices[static_cast<std::size_t>(b)]).sum();
  return symmetrize(m);
}

Matrix invariant_ricci(const SkewTensor& mu, const Metric& g, const Structure& gamma, double compat_tol) {
  return invariant_projection(gamma, g, ricci_operator(mu, g), compat_tol);
}

double functional_F(const SkewTensor& mu, const Structure& gamma) {
  const double nn = inner(mu, mu);
  if (nn == 0.0) throw Error(ErrorKind::ZeroTensor, "F is undefined at mu = 0");
  const Matrix r = invariant_ricci(mu, Metric::identity(mu.dim()), gamma);
  return (r * r).trace() / (nn * nn);
}

double functional_F(const SkewTensor& mu, const Metric& g, const Structure& gamma) {
  const Matrix r = invariant_ricci(mu, g, gamma);
  const double scal = ricci_operator(mu, g).trace();
  if (scal == 0.0) throw Error(ErrorKind::ZeroTensor, "F is undefined at mu = 0");
  return (r * r).trace() / (16.0 * scal * scal);
}

std::vector<double> self_adjoint_eigenvalues(const Metric& g, const Matrix& a) {
  return symmetric_eigenvalues(symmetrize(g.to_frame(a)));
}

CurvatureReport curvature_report(const SkewTensor& mu, const Metric& g, const Structure& gamma) {
  CurvatureReport rep;
  const SkewTensor frame = g.is_identity() ? mu : act(g.transport(), mu);
  const Matrix ric0 = ricci_identity(frame);
  rep.ric = g.from_frame(ric0);
  rep.scal = ric0.trace();
  rep.ric_gamma = invariant_projection(gamma, g, rep.ric);
  rep.moment = g.from_frame(moment_map(frame));
  const Matrix rg0 = symmetrize(g.to_frame(rep.ric_gamma));
  rep.F_value = rep.scal == 0.0 ? 0.0 : (rg0 * rg0).trace() / (16.0 * rep.scal * rep.scal);
  rep.eigen_ric = symmetric_eigenvalues(ric0);
  rep.eigen_ric_gamma = symmetric_eigenvalues(rg0);
  return rep;
}

}  // namespace nilmetric
