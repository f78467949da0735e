#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/minimality.hpp"
#include "nilmetric/skew_tensor.hpp"
#include "nilmetric/structures.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace nilmetric {

enum class FlowSign { Plus, Minus };
enum class Integrator { RK4, Euler };

struct FlowConfig {
  double step = 1e-3;           // initial step (time step or descent step)
  double horizon = 1.0;         // metric flows: final time
  int max_iter = 2000;          // descent: iteration budget
  FlowSign sign = FlowSign::Minus;
  bool renorm = true;           // descent: keep ||mu|| = 1
  double tol_converge = 1e-10;  // descent: stop when ||d|| <= tol
  Integrator integrator = Integrator::RK4;
  double scal_drift_tol = 1e-8;  // normalized flow: per-step relative scal drift
  double min_step = 1e-14;

  void validate() const;
};

struct FlowSample {
  double t = 0.0;
  double scal = 0.0;
  double F = 0.0;
  double cert_residual = 0.0;
};

struct FlowTrace {
  std::vector<FlowSample> samples;
  std::optional<Metric> final_metric;
  std::optional<SkewTensor> final_bracket;
  bool converged = false;
  bool no_descent = false;
  int iterations = 0;
  double max_compatibility = 0.0;  // scale-normalized residual along the path
  std::vector<Matrix> metrics;     // metric flows: G at each sample
};

/// Integrates dG/dt = s G Ric^gamma_G [- s (tr (Ric^gamma_G)^2 / scal_G) G]
/// with step halving on loss of positivity or scal drift.
FlowTrace metric_flow(const SkewTensor& mu, const Structure& gamma, const Metric& g0, const FlowConfig& cfg,
                      bool normalized);

/// Right-hand side of the metric flow at G.
Matrix metric_flow_field(const SkewTensor& mu, const Structure& gamma, const Metric& g, FlowSign sign,
                         bool normalized);

/// d(mu) = -(delta_mu(Ric^gamma) - <delta_mu(Ric^gamma), mu>/||mu||^2 mu), identity frame.
/// F decreases along d; d = 0 iff Ric^gamma in R I + Der(mu).
SkewTensor descent_direction(const SkewTensor& mu, const Structure& gamma);

/// Gradient of F in V for the inner product of V: -d / ||mu||^4.
SkewTensor gradient_F(const SkewTensor& mu, const Structure& gamma);

/// mu_k = normalize(g_k.mu0), g_{k+1} = exp(-eta X_k) g_k, where X_k is the
/// minimal-norm element of p_gamma moving mu like Ric^gamma does (first-order
/// displacement eta d). Armijo backtracking on F; no_descent if it fails.
FlowTrace bracket_descent(const SkewTensor& mu0, const Structure& gamma, const FlowConfig& cfg);

struct SelfSimilarityReport {
  Certificate certificate;
  double max_deviation = 0.0;  // max_t ||G_t - G_t^cand|| / ||G_t^cand||
  std::vector<double> times;
  std::vector<double> deviations;
};

/// Compares the normalized flow from a certified G with phi_t^T G phi_t,
/// phi_t = exp(s t D / 2). NotCertified if the certificate fails.
SelfSimilarityReport soliton_selfsimilarity_check(const SkewTensor& mu, const Structure& gamma, const Metric& g,
                                                  const FlowConfig& cfg);

/// Random element of the identity component of G_gamma near I:
/// exp(scale * P_gamma(A)), A Gaussian, gamma compatible with the identity metric.
Matrix random_structure_element(const Structure& gamma, std::uint64_t seed, double scale);

struct SearchResult {
  int best_start = -1;
  double best_F = 0.0;
  FlowTrace trace;
  Certificate certificate;
  std::vector<double> final_F;  // per start
};

/// Runs bracket_descent from act(g_k, mu) for `starts` random g_k in G_gamma
/// (start 0 uses g = I) on worker threads; keeps the smallest final F.
SearchResult multistart_search(const SkewTensor& mu, const Structure& gamma, const FlowConfig& cfg, int starts,
                               std::uint64_t seed, double perturbation = 0.3);

}  // namespace nilmetric
