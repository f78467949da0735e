#pragma once

#include "nilmetric/linalg.hpp"
#include "nilmetric/metric.hpp"
#include "nilmetric/skew_tensor.hpp"
#include "nilmetric/structures.hpp"

#include <string_view>
#include <vector>

namespace nilmetric {

inline constexpr double kCertifyTol = 1e-8;

/// NotCertified means the test failed at this metric; it does not prove
/// that no minimal compatible metric exists.
enum class Verdict { Minimal, NotCertified };

std::string_view to_string(Verdict v);

/// Ric^gamma = c I + D with residual ||delta_mu(D)|| / ((1 + ||D||) ||mu||),
/// norms taken in the G-orthonormal frame.
struct Certificate {
  double c = 0.0;
  Matrix D;
  double residual = 0.0;
  Verdict verdict = Verdict::NotCertified;
  double tolerance = kCertifyTol;
};

Certificate certify_minimal(const SkewTensor& mu, const Metric& g, const Structure& gamma,
                            double tol = kCertifyTol, double compat_tol = kStructureTol);

/// Block-scalar shortcut for 2-step brackets: c = 2p - q,
/// D = (q-p) on n1 and 2(q-p) on n2. NotApplicable if mu is not 2-step, the
/// splitting is not gamma-invariant, or the blocks are not scalar.
Certificate two_step_shortcut(const SkewTensor& mu, const Metric& g, const Structure& gamma,
                              double tol = kCertifyTol, double block_tol = 1e-8);

struct Obstruction {
  bool abelian = false;
  double ric_ac_norm = 0.0;  // ||Ric^ac|| in the orthonormal frame
};

/// Non-hermitian Ricci obstruction for a closed symplectic omega.
/// WrongTag unless symplectic, NotClosed if d omega != 0.
Obstruction hermitian_obstruction(const SkewTensor& mu, const Metric& g, const Structure& omega);

struct Fingerprint {
  int dim = 0;
  std::vector<double> eigen_ric;        // divided by |scal|
  std::vector<double> eigen_ric_gamma;  // divided by |scal|
  double scal = 0.0;
  std::vector<int> lcs_dims;
};

Fingerprint fingerprint(const SkewTensor& mu, const Metric& g, const Structure& gamma);

enum class Distinction { Distinct, Indistinguishable };

std::string_view to_string(Distinction d);

/// Distinct when the lower central series or any normalized eigenvalue
/// differs by more than tol. Indistinguishable is not a proof of isomorphism.
Distinction distinguish(const Fingerprint& a, const Fingerprint& b, double tol = 1e-6);

}  // namespace nilmetric
