#include "doctest.h"
#include "support/oracles.hpp"

#include "nilmetric/algebra.hpp"
#include "nilmetric/catalog.hpp"
#include "nilmetric/curvature.hpp"
#include "nilmetric/error.hpp"
#include "nilmetric/flows.hpp"
#include "nilmetric/minimality.hpp"

#include <cmath>
#include <random>

using namespace nilmetric;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::InvalidArgument;
}

constexpr double kF = 7.0 / 160.0;

// G = P^T P with P in the structure group: compatible by construction
Metric compatible_metric(const Structure& gamma, std::uint64_t seed, double scale) {
  const Matrix p = random_structure_element(gamma, seed, scale);
  const Matrix g = p.transpose() * p;
  return Metric(0.5 * (g + g.transpose()));
}

}  // namespace

TEST_CASE("flow config validation") {
  FlowConfig cfg;
  cfg.step = 0.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidArgument);
  cfg = FlowConfig{};
  cfg.tol_converge = -1.0;
  CHECK(kind_of([&] { cfg.validate(); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("structure group elements") {
  const Structure om = standard_structure(StructureClass::Symplectic, 6);
  const Structure hc = standard_structure(StructureClass::Hypercomplex, 8);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const Matrix g = random_structure_element(om, s, 0.7);
    CHECK((g.transpose() * om.omega() * g - om.omega()).norm() <= 1e-12);
    const Matrix h = random_structure_element(hc, s, 0.7);
    for (const Matrix& j : hc.js()) CHECK((h * j - j * h).norm() <= 1e-12);
  }
  // deterministic in the seed
  CHECK((random_structure_element(om, 3, 0.5) - random_structure_element(om, 3, 0.5)).norm() == 0.0);
}

TEST_CASE("metric flow basics") {
  FlowConfig cfg;
  cfg.horizon = 0.1;
  cfg.step = 1e-2;
  const Structure om = standard_structure(StructureClass::Symplectic, 6);
  const FlowTrace z = metric_flow(SkewTensor::zero(6), om, Metric::identity(6), cfg, false);
  CHECK((z.final_metric->matrix() - Matrix::Identity(6, 6)).norm() == 0.0);

  Matrix bad = Matrix::Identity(6, 6);
  bad(0, 0) = 2.0;
  CHECK(kind_of([&] { metric_flow(m26(0, 1).bracket, om, Metric(bad), cfg, true); }) ==
        ErrorKind::IncompatibleMetric);

  const FlowTrace tr = metric_flow(m26(0, 1).bracket, om, compatible_metric(om, 4, 0.5), cfg, false);
  CHECK(tr.samples.front().t == 0.0);
  CHECK(tr.samples.back().t == doctest::Approx(0.1).epsilon(1e-14));
  for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].t > tr.samples[i - 1].t);
  CHECK(tr.metrics.size() == tr.samples.size());
}

TEST_CASE("flow field is tangent to the compatible metrics") {
  const Structure cx = standard_structure(StructureClass::Complex, 6);
  const auto p = complex_curve(1.5);
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Metric g = compatible_metric(cx, s, 0.6);
    const SkewTensor mu = act(random_structure_element(cx, 100 + s, 0.4), p.bracket);
    for (bool normalized : {false, true}) {
      const Matrix f = metric_flow_field(mu, cx, g, FlowSign::Minus, normalized);
      CHECK((f - f.transpose()).norm() <= 1e-12 * (1 + f.norm()));
      CHECK((cx.j().transpose() * f * cx.j() - f).norm() <= 1e-11 * (1 + f.norm()));
    }
  }
}

TEST_CASE("normalized flow conserves scal") {
  const auto p = m26(1.0, 0.0);
  FlowConfig cfg;
  cfg.horizon = 0.3;
  for (std::uint64_t s = 0; s < 3; ++s) {
    const FlowTrace tr = metric_flow(p.bracket, p.structure, compatible_metric(p.structure, 20 + s, 0.5), cfg, true);
    const double s0 = tr.samples.front().scal;
    for (const auto& smp : tr.samples) CHECK(std::abs(smp.scal - s0) <= 1e-6 * std::abs(s0));
    CHECK(tr.max_compatibility <= 1e-7);
  }
}

TEST_CASE("certified metrics are self-similar") {
  FlowConfig cfg;
  for (const auto& p : {heisenberg(3), m26(1.0, 0.0), complex_curve(3.0)}) {
    // unit bracket: D scales with |mu|^2 and the flow decays like exp(-tD/2)
    const SkewTensor mu = (1.0 / norm(p.bracket)) * p.bracket;
    const SelfSimilarityReport rep = soliton_selfsimilarity_check(mu, p.structure, p.metric, cfg);
    CHECK(rep.max_deviation <= 1e-6);
    CHECK(rep.times.back() == doctest::Approx(1.0));
  }
  // along the normalized flow Ric^gamma stays cI + D
  const auto p = m26(0.0, 1.0);
  cfg.horizon = 0.5;
  const FlowTrace tr = metric_flow(p.bracket, p.structure, p.metric, cfg, true);
  for (const auto& smp : tr.samples) CHECK(smp.cert_residual <= 1e-8);

  const SelfSimilarityReport ab =
      soliton_selfsimilarity_check(SkewTensor::zero(4), Structure::none(4), Metric::identity(4), cfg);
  CHECK(ab.max_deviation == 0.0);

  std::mt19937_64 rng(1);
  const SkewTensor generic = oracle::random_two_step(rng, 4, 3);
  CHECK(kind_of([&] { soliton_selfsimilarity_check(generic, Structure::none(7), Metric::identity(7), cfg); }) ==
        ErrorKind::NotCertified);
}

TEST_CASE("gradient of F against finite differences") {
  std::mt19937_64 rng(22);
  const std::vector<Structure> classes = {Structure::none(6), standard_structure(StructureClass::Symplectic, 6),
                                          standard_structure(StructureClass::Complex, 6)};
  for (const Structure& gamma : classes) {
    for (int k = 0; k < 5; ++k) {
      const SkewTensor mu = oracle::random_tensor(rng, 6);
      const SkewTensor dir = oracle::random_tensor(rng, 6);
      const auto f = [&](const SkewTensor& m) { return functional_F(m, gamma); };
      const double fd = oracle::fd_directional(f, mu, dir, 1e-6 * norm(mu));
      const double an = inner(gradient_F(mu, gamma), dir);
      CHECK(std::abs(fd - an) <= 1e-5 * (std::abs(fd) + 1e-3 * std::abs(an) + 1e-12));
      // descent direction lowers F
      const SkewTensor d = descent_direction(mu, gamma);
      CHECK(oracle::fd_directional(f, mu, d, 1e-6 * norm(mu)) < 0.0);
    }
  }
  CHECK(kind_of([] { gradient_F(SkewTensor::zero(3), Structure::none(3)); }) == ErrorKind::ZeroTensor);
}

TEST_CASE("fixed points of the descent are the certified brackets") {
  for (const auto& p : {m26(1.0, 0.0), m26(0.0, 1.0), complex_curve(2.0), heisenberg(5),
                        catalog_get("hc-g3")}) {
    const double nn = inner(p.bracket, p.bracket);
    const double stat = norm(descent_direction(p.bracket, p.structure)) / (nn * std::sqrt(nn));
    const Certificate c = certify_minimal(p.bracket, p.metric, p.structure);
    CHECK(stat <= 1e-12);
    CHECK(c.residual <= 1e-11);
  }
  std::mt19937_64 rng(23);
  const SkewTensor mu = oracle::random_two_step(rng, 4, 3);
  const double nn = inner(mu, mu);
  CHECK(norm(descent_direction(mu, Structure::none(7))) / (nn * std::sqrt(nn)) > 1e-4);
  CHECK(certify_minimal(mu, Metric::identity(7), Structure::none(7)).residual > 1e-4);
}

TEST_CASE("descent from the critical point") {
  const auto p = m26(1.0, 0.0);
  FlowConfig cfg;
  cfg.step = 0.1;
  const FlowTrace tr = bracket_descent(p.bracket, p.structure, cfg);
  CHECK(tr.converged);
  CHECK(tr.iterations == 0);
  CHECK(tr.samples.front().F == doctest::Approx(kF).epsilon(1e-12));
  CHECK(kind_of([&] { bracket_descent(SkewTensor::zero(6), p.structure, cfg); }) == ErrorKind::ZeroTensor);
}

TEST_CASE("descent reaches 7/160 from symplectic perturbations") {
  FlowConfig cfg;
  cfg.step = 0.1;
  cfg.max_iter = 500;
  for (const auto& p : {m26(1.0, 0.0), m26(0.0, 1.0)}) {
    for (std::uint64_t s = 0; s < 3; ++s) {
      const SkewTensor start = act(random_structure_element(p.structure, 40 + s, 0.6), p.bracket);
      const FlowTrace tr = bracket_descent(start, p.structure, cfg);
      CHECK(tr.converged);
      CHECK_FALSE(tr.no_descent);
      for (std::size_t i = 1; i < tr.samples.size(); ++i) CHECK(tr.samples[i].F <= tr.samples[i - 1].F);
      CHECK(std::abs(tr.samples.back().F - kF) <= 1e-6);
      const SkewTensor& lim = *tr.final_bracket;
      CHECK(norm(lim) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(certify_minimal(lim, Metric::identity(6), p.structure).verdict == Verdict::Minimal);
      // iterates stay on the orbit: closedness (and Jacobi) are preserved
      const double sq = inner(lim, lim);
      if (p.validation.valid) {
        CHECK(integrability_residual(p.structure, lim) <= 1e-8 * sq);
        CHECK(jacobi_residual(lim) <= 1e-8 * sq);
      }
    }
  }
}

TEST_CASE("restricted search inside the six-parameter family") {
  // diagonal symplectic maps keep the bracket inside span of the family's six coefficients
  const auto p = m26(1.0, 0.0);
  Matrix g = Matrix::Identity(6, 6);
  const double a[3] = {1.3, 0.8, 1.1};
  for (int i = 0; i < 3; ++i) {
    g(i, i) = a[i];
    g(5 - i, 5 - i) = 1.0 / a[i];
  }
  FlowConfig cfg;
  cfg.step = 0.1;
  cfg.max_iter = 500;
  const FlowTrace tr = bracket_descent(act(g, p.bracket), p.structure, cfg);
  const SkewTensor& lim = *tr.final_bracket;
  SkewTensor outside = lim;
  for (auto [i, j, k] : {std::array<int, 3>{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {1, 2, 4}, {1, 3, 5}})
    outside.set(i, j, k, 0.0);
  CHECK(outside.coeff_norm() <= 1e-12);
  CHECK(std::abs(tr.samples.back().F - kF) <= 1e-9);
}

TEST_CASE("multistart search") {
  const auto p = m26(0.0, 1.0);
  const SkewTensor start = act(random_structure_element(p.structure, 77, 0.5), p.bracket);
  FlowConfig cfg;
  cfg.step = 0.1;
  cfg.max_iter = 300;
  const SearchResult a = multistart_search(start, p.structure, cfg, 4, 5);
  const SearchResult b = multistart_search(start, p.structure, cfg, 4, 5);
  CHECK(a.final_F.size() == 4);
  CHECK(std::abs(a.best_F - kF) <= 1e-6);
  CHECK(a.certificate.verdict == Verdict::Minimal);
  CHECK(a.best_start == b.best_start);
  CHECK(a.final_F == b.final_F);
  CHECK(kind_of([&] { multistart_search(start, p.structure, cfg, 0, 5); }) == ErrorKind::InvalidArgument);
}
