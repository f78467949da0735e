#include "nilmetric/minimality.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/curvature.hpp"
#include "nilmetric/error.hpp"

#include <cmath>

namespace nilmetric {

namespace {

SkewTensor frame_tensor(const SkewTensor& mu, const Metric& g) {
  return g.is_identity() ? mu : act(g.transport(), mu);
}

void finish(Certificate& cert, const SkewTensor& mu, const Metric& g, double tol) {
  cert.tolerance = tol;
  const SkewTensor nu = frame_tensor(mu, g);
  const double nn = norm(nu);
  if (nn == 0.0) {
    cert.residual = 0.0;
  } else {
    const Matrix df = g.to_frame(cert.D);
    cert.residual = norm(coboundary(nu, df)) / ((1.0 + df.norm()) * nn);
  }
  cert.verdict = cert.residual <= tol ? Verdict::Minimal : Verdict::NotCertified;
}

bool scalar_block(const Matrix& b, double scale, double tol, double& value) {
  const auto k = b.rows();
  value = b.trace() / static_cast<double>(k);
  return (b - value * Matrix::Identity(k, k)).norm() <= tol * (1.0 + scale);
}

}  // namespace

std::string_view to_string(Verdict v) { return v == Verdict::Minimal ? "Minimal" : "NotCertified"; }

std::string_view to_string(Distinction d) {
  return d == Distinction::Distinct ? "Distinct" : "Indistinguishable";
}

Certificate certify_minimal(const SkewTensor& mu, const Metric& g, const Structure& gamma, double tol,
                            double compat_tol) {
  const Matrix rg = invariant_ricci(mu, g, gamma, compat_tol);
  const double scal = scalar_curvature(mu, g);
  const int n = mu.dim();
  Certificate cert;
  if (scal != 0.0) {
    const Matrix rf = g.to_frame(rg);
    cert.c = (rf * rf).trace() / scal;
  }
  cert.D = rg - cert.c * Matrix::Identity(n, n);
  finish(cert, mu, g, tol);
  return cert;
}

Certificate two_step_shortcut(const SkewTensor& mu, const Metric& g, const Structure& gamma, double tol,
                              double block_tol) {
  TwoStepSplit split;
  try {
    split = two_step_split(mu, g);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotTwoStep) throw;
    throw Error(ErrorKind::NotApplicable, std::string("shortcut needs a 2-step bracket: ") + e.what());
  }
  const Matrix& gm = g.matrix();
  const Matrix p1 = split.n1 * split.n1.transpose() * gm;
  const Matrix p2 = split.n2 * split.n2.transpose() * gm;
  const double split_scale = gamma.scale();
  for (const Matrix& op : gamma.complex_operators()) {
    if ((p2 * op * p1).norm() > block_tol * (1.0 + split_scale) ||
        (p1 * op * p2).norm() > block_tol * (1.0 + split_scale))
      throw Error(ErrorKind::NotApplicable, "splitting is not invariant under the structure");
  }

  const Matrix rg = invariant_ricci(mu, g, gamma);
  const Matrix b1 = split.n1.transpose() * gm * rg * split.n1;
  const Matrix b2 = split.n2.transpose() * gm * rg * split.n2;
  const Matrix cross = split.n1.transpose() * gm * rg * split.n2;
  const double scale = g.to_frame(rg).norm();
  double p = 0.0;
  double q = 0.0;
  if (!scalar_block(b1, scale, block_tol, p) || !scalar_block(b2, scale, block_tol, q) ||
      cross.norm() > block_tol * (1.0 + scale))
    throw Error(ErrorKind::NotApplicable, "Ric^gamma is not block-scalar on the 2-step splitting");

  Certificate cert;
  cert.c = 2.0 * p - q;
  cert.D = (q - p) * p1 + 2.0 * (q - p) * p2;
  finish(cert, mu, g, tol);
  return cert;
}

Obstruction hermitian_obstruction(const SkewTensor& mu, const Metric& g, const Structure& omega) {
  if (omega.kind() != StructureClass::Symplectic)
    throw Error(ErrorKind::WrongTag, "obstruction needs a symplectic structure");
  if (integrability_relative(omega, mu) > kStructureTol)
    throw Error(ErrorKind::NotClosed, "omega is not closed for this bracket");
  Obstruction ob;
  if (mu.is_zero()) {
    ob.abelian = true;
    return ob;
  }
  ob.ric_ac_norm = g.to_frame(invariant_ricci(mu, g, omega)).norm();
  return ob;
}

Fingerprint fingerprint(const SkewTensor& mu, const Metric& g, const Structure& gamma) {
  const CurvatureReport rep = curvature_report(mu, g, gamma);
  Fingerprint fp;
  fp.dim = mu.dim();
  fp.scal = rep.scal;
  const double scale = rep.scal == 0.0 ? 1.0 : std::abs(rep.scal);
  for (double e : rep.eigen_ric) fp.eigen_ric.push_back(e / scale);
  for (double e : rep.eigen_ric_gamma) fp.eigen_ric_gamma.push_back(e / scale);
  fp.lcs_dims = lower_central_series_dims(mu);
  return fp;
}

Distinction distinguish(const Fingerprint& a, const Fingerprint& b, double tol) {
  if (a.dim != b.dim) throw Error(ErrorKind::DimensionMismatch, "fingerprints have different dimensions");
  if (a.lcs_dims != b.lcs_dims) return Distinction::Distinct;
  const auto differs = [tol](const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) return true;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (std::abs(x[i] - y[i]) > tol) return true;
    return false;
  };
  if (differs(a.eigen_ric, b.eigen_ric) || differs(a.eigen_ric_gamma, b.eigen_ric_gamma))
    return Distinction::Distinct;
  return Distinction::Indistinguishable;
}

}  // namespace nilmetric
