#include "nilmetric/flows.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/curvature.hpp"
#include "nilmetric/error.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace nilmetric {

namespace {

constexpr double kArmijo = 1e-4;
// Runge-Kutta stages sit O(h^2) off the compatible set; the field is a smooth
// extension there, so only gross incompatibility is rejected.
constexpr double kStageCompatTol = 1e-3;
// Bound on ||eta Ric^gamma|| per descent step. Long steps near a critical
// point amplify rounding off the orbit exponentially.
constexpr double kMaxGroupStep = 0.5;
// Tikhonov weight (relative to the top singular value) for orbit_step.
constexpr double kOrbitDamping = 3e-3;
// cond(g) beyond which the descent restarts its accumulation from the iterate
constexpr double kRebaseCond = 1e2;
constexpr double kStationaryFloor = 1e-7;

double sign_value(FlowSign s) { return s == FlowSign::Plus ? 1.0 : -1.0; }

struct MetricState {
  double scal = 0.0;
  double F = 0.0;
  double cert = 0.0;
};

MetricState evaluate(const SkewTensor& mu, const Structure& gamma, const Metric& g) {
  MetricState st;
  const Certificate cert = certify_minimal(mu, g, gamma, kCertifyTol, kStageCompatTol);
  st.scal = scalar_curvature(mu, g);
  if (st.scal != 0.0) {
    const Matrix rf = g.to_frame(cert.D) + cert.c * Matrix::Identity(g.dim(), g.dim());
    st.F = (rf * rf).trace() / (16.0 * st.scal * st.scal);
  }
  st.cert = cert.residual;
  return st;
}

std::optional<Metric> try_metric(const Matrix& m) {
  try {
    return Metric(symmetrize(m));
  } catch (const Error&) {
    return std::nullopt;
  }
}

/// One integrator step; nullopt when an intermediate G is not SPD.
std::optional<Metric> advance(const SkewTensor& mu, const Structure& gamma, const Metric& g, double h,
                              const FlowConfig& cfg, bool normalized) {
  const auto field = [&](const Metric& m) { return metric_flow_field(mu, gamma, m, cfg.sign, normalized); };
  const Matrix& g0 = g.matrix();
  const Matrix k1 = field(g);
  if (cfg.integrator == Integrator::Euler) return try_metric(g0 + h * k1);

  auto m2 = try_metric(g0 + 0.5 * h * k1);
  if (!m2) return std::nullopt;
  const Matrix k2 = field(*m2);
  auto m3 = try_metric(g0 + 0.5 * h * k2);
  if (!m3) return std::nullopt;
  const Matrix k3 = field(*m3);
  auto m4 = try_metric(g0 + h * k3);
  if (!m4) return std::nullopt;
  const Matrix k4 = field(*m4);
  return try_metric(g0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

/// Minimal-norm X in p_gamma with tangential(delta_mu(X)) = tangential(delta_mu(R)).
/// Drops the part of R that only moves along the projective stabilizer of mu,
/// which would otherwise drive the accumulated group element to infinity.
Matrix orbit_step(const SkewTensor& mu, const std::vector<Matrix>& basis, const Matrix& r) {
  const double nn = inner(mu, mu);
  const Vector mv = mu.as_vector();
  Matrix m(mv.size(), static_cast<Eigen::Index>(basis.size()));
  Vector rc(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const SkewTensor v = coboundary(mu, basis[b]);
    const auto col = static_cast<Eigen::Index>(b);
    m.col(col) = v.as_vector() - (inner(v, mu) / nn) * mv;
    rc(col) = (r * basis[b]).trace();
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  // damped: directions close to the stabilizer barely move mu but would let
  // g drift off to infinity, so they are suppressed smoothly
  const double lam = kOrbitDamping * (sv.size() ? sv(0) : 0.0);
  Vector xc = Vector::Zero(rc.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s2 = sv(i) * sv(i);
    if (s2 == 0.0) break;
    const Vector vi = svd.matrixV().col(i);
    xc += (s2 / (s2 + lam * lam)) * vi.dot(rc) * vi;
  }
  Matrix x = Matrix::Zero(r.rows(), r.cols());
  for (std::size_t b = 0; b < basis.size(); ++b) x += xc(static_cast<Eigen::Index>(b)) * basis[b];
  return x;
}

double objective(const SkewTensor& mu, const Structure& gamma) {
  const Matrix r = invariant_ricci(mu, Metric::identity(mu.dim()), gamma);
  const double nn = inner(mu, mu);
  return (r * r).trace() / (nn * nn);
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  if (!(tol_converge > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol_converge must be positive");
  if (!(horizon > 0.0)) throw Error(ErrorKind::InvalidArgument, "horizon must be positive");
  if (max_iter <= 0) throw Error(ErrorKind::InvalidArgument, "max_iter must be positive");
}

Matrix metric_flow_field(const SkewTensor& mu, const Structure& gamma, const Metric& g, FlowSign sign,
                         bool normalized) {
  const double s = sign_value(sign);
  const Matrix& gm = g.matrix();
  const Matrix rg = invariant_ricci(mu, g, gamma, kStageCompatTol);
  Matrix v = s * symmetrize(gm * rg);
  if (normalized) {
    const double scal = scalar_curvature(mu, g);
    if (scal != 0.0) {
      const Matrix rf = g.to_frame(rg);
      v -= s * ((rf * rf).trace() / scal) * gm;
    }
  }
  return v;
}

FlowTrace metric_flow(const SkewTensor& mu, const Structure& gamma, const Metric& g0, const FlowConfig& cfg,
                      bool normalized) {
  cfg.validate();
  if (mu.dim() != g0.dim()) throw Error(ErrorKind::DimensionMismatch, "tensor and metric dimensions differ");
  const double compat0 = compatibility_residual_up_to_scale(gamma, g0);
  if (!(compat0 <= kStructureTol))
    throw Error(ErrorKind::IncompatibleMetric, "initial metric is not compatible with the structure");

  FlowTrace trace;
  Metric g = g0;
  double t = 0.0;
  double h = cfg.step;
  MetricState st = evaluate(mu, gamma, g);
  trace.samples.push_back({t, st.scal, st.F, st.cert});
  trace.metrics.push_back(g.matrix());
  trace.max_compatibility = compat0;

  const double end = cfg.horizon;
  while (t < end - 1e-15 * std::max(1.0, end)) {
    const double dt = std::min(h, end - t);
    auto next = advance(mu, gamma, g, dt, cfg, normalized);
    std::optional<MetricState> nst;
    if (next) {
      nst = evaluate(mu, gamma, *next);
      if (normalized && std::abs(nst->scal - st.scal) > cfg.scal_drift_tol * std::max(std::abs(st.scal), 1e-300))
        nst.reset();
    }
    if (!nst) {
      h = 0.5 * dt;
      if (h < cfg.min_step) throw Error(ErrorKind::StepCollapse, "step size underflow in metric flow");
      continue;
    }
    g = *next;
    st = *nst;
    t += dt;
    ++trace.iterations;
    trace.samples.push_back({t, st.scal, st.F, st.cert});
    trace.metrics.push_back(g.matrix());
    trace.max_compatibility = std::max(trace.max_compatibility, compatibility_residual_up_to_scale(gamma, g));
    h = std::min(2.0 * dt, cfg.step);
  }
  trace.converged = true;
  trace.final_metric = g;
  return trace;
}

SkewTensor descent_direction(const SkewTensor& mu, const Structure& gamma) {
  const Matrix r = invariant_ricci(mu, Metric::identity(mu.dim()), gamma);
  SkewTensor d = coboundary(mu, r);
  const double nn = inner(mu, mu);
  if (nn > 0.0) d -= (inner(d, mu) / nn) * mu;
  d *= -1.0;
  return d;
}

SkewTensor gradient_F(const SkewTensor& mu, const Structure& gamma) {
  const double nn = inner(mu, mu);
  if (nn == 0.0) throw Error(ErrorKind::ZeroTensor, "F is undefined at mu = 0");
  SkewTensor d = descent_direction(mu, gamma);
  d *= -1.0 / (nn * nn);
  return d;
}

FlowTrace bracket_descent(const SkewTensor& mu0, const Structure& gamma, const FlowConfig& cfg) {
  cfg.validate();
  const double n0 = norm(mu0);
  if (n0 == 0.0) throw Error(ErrorKind::ZeroTensor, "descent needs a nonzero starting bracket");
  const Metric id = Metric::identity(mu0.dim());
  const double compat = compatibility_residual_up_to_scale(gamma, id);
  if (!(compat <= kStructureTol))
    throw Error(ErrorKind::IncompatibleMetric, "descent runs in the identity frame; structure is not compatible");

  // Iterates are g_k.base with g_k accumulated in G_gamma; recomputing from base
  // keeps rounding from being amplified off the orbit. base is reset to the
  // iterate whenever g gets ill-conditioned (one rounding per reset).
  SkewTensor base = mu0;
  if (cfg.renorm) base *= 1.0 / n0;
  SkewTensor mu = base;
  Matrix g = Matrix::Identity(mu0.dim(), mu0.dim());
  const std::vector<Matrix> basis = structure_algebra(gamma, id).sym_basis;

  FlowTrace trace;
  double eta = cfg.step;
  double F = objective(mu, gamma);
  const auto record = [&](double t) {
    const double scal = -0.25 * inner(mu, mu);
    trace.samples.push_back({t, scal, F, certify_minimal(mu, id, gamma).residual});
  };
  record(0.0);

  for (int k = 0; k < cfg.max_iter; ++k) {
    const SkewTensor d = descent_direction(mu, gamma);
    const double nn = inner(mu, mu);
    const double stat = norm(d) / (nn * std::sqrt(nn));
    if (stat <= cfg.tol_converge) {
      trace.converged = true;
      break;
    }
    const Matrix r = orbit_step(mu, basis, invariant_ricci(mu, id, gamma));
    eta = std::min(eta, kMaxGroupStep / std::max(r.norm(), 1e-300));
    const double decrease = kArmijo * inner(d, d) / (nn * nn);
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      const Matrix gc = matrix_exp(-eta * r) * g;
      SkewTensor cand = act(gc, base);
      if (cfg.renorm) cand *= 1.0 / norm(cand);
      const double Fc = objective(cand, gamma);
      if (Fc < F && Fc <= F - eta * decrease) {
        mu = std::move(cand);
        g = gc;
        F = Fc;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) {
      // F is only resolved to ~eps*F, which caps the reachable stationarity
      if (stat <= kStationaryFloor) trace.converged = true;
      else trace.no_descent = true;
      break;
    }
    if (Eigen::JacobiSVD<Matrix> sv(g); sv.singularValues()(0) > kRebaseCond * sv.singularValues().tail(1)(0)) {
      base = mu;
      g.setIdentity();
    }
    ++trace.iterations;
    record(static_cast<double>(trace.iterations));
    eta *= 2.0;
  }
  trace.final_bracket = mu;
  return trace;
}

SelfSimilarityReport soliton_selfsimilarity_check(const SkewTensor& mu, const Structure& gamma, const Metric& g,
                                                  const FlowConfig& cfg) {
  SelfSimilarityReport rep;
  rep.certificate = certify_minimal(mu, g, gamma);
  if (rep.certificate.verdict != Verdict::Minimal)
    throw Error(ErrorKind::NotCertified, "starting metric does not pass the minimality certificate");
  const FlowTrace tr = metric_flow(mu, gamma, g, cfg, true);
  const double s = sign_value(cfg.sign);
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const double t = tr.samples[i].t;
    const Matrix phi = matrix_exp((0.5 * s * t) * rep.certificate.D);
    const Matrix cand = phi.transpose() * g.matrix() * phi;
    const double dev = (tr.metrics[i] - cand).norm() / cand.norm();
    rep.times.push_back(t);
    rep.deviations.push_back(dev);
    rep.max_deviation = std::max(rep.max_deviation, dev);
  }
  return rep;
}

Matrix random_structure_element(const Structure& gamma, std::uint64_t seed, double scale) {
  const int n = gamma.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = normal(rng);
  const Structure frame = gamma.to_frame(Metric::identity(n));
  const Matrix p = structure_lie_projection(frame, a);
  const double pn = p.norm();
  if (pn == 0.0) return Matrix::Identity(n, n);
  return matrix_exp((scale / pn) * p);
}

SearchResult multistart_search(const SkewTensor& mu, const Structure& gamma, const FlowConfig& cfg, int starts,
                               std::uint64_t seed, double perturbation) {
  if (starts <= 0) throw Error(ErrorKind::InvalidArgument, "starts must be positive");
  cfg.validate();
  std::vector<std::optional<FlowTrace>> traces(static_cast<std::size_t>(starts));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(starts));
  {
    std::vector<std::jthread> workers;
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int width = std::min(starts, static_cast<int>(hw));
    for (int w = 0; w < width; ++w) {
      workers.emplace_back([&, w] {
        for (int k = w; k < starts; k += width) {
          const auto idx = static_cast<std::size_t>(k);
          try {
            const SkewTensor start =
                k == 0 ? mu : act(random_structure_element(gamma, seed + static_cast<std::uint64_t>(k), perturbation), mu);
            traces[idx] = bracket_descent(start, gamma, cfg);
          } catch (...) {
            errors[idx] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchResult res;
  for (int k = 0; k < starts; ++k) {
    const FlowTrace& tr = *traces[static_cast<std::size_t>(k)];
    const double f = tr.samples.back().F;
    res.final_F.push_back(f);
    if (res.best_start < 0 || f < res.best_F) {
      res.best_start = k;
      res.best_F = f;
    }
  }
  res.trace = *traces[static_cast<std::size_t>(res.best_start)];
  res.certificate = certify_minimal(*res.trace.final_bracket, Metric::identity(mu.dim()), gamma);
  return res;
}

}  // namespace nilmetric
