#pragma once
// Closed-form distances between the output laws N(Ax, Sigma) and N(Ax', Sigma).
// Everything is a function of the Mahalanobis distance ||x - x'||_M^2 with
// M = A^T Sigma^-1 A. All divergences are in nats.

#include "dicode/channel.hpp"

namespace dicode {

struct PairGeometry {
  Vector delta;  // x - x'
  double mah_sq = 0.0;  // delta^T M delta
  double euc_sq = 0.0;  // delta^T delta
};

PairGeometry pair_geometry(const Vector& x, const Vector& x2, const SpectralCache& cache);

/// Bhattacharyya coefficient exp(-mah_sq / 8). Underflows to 0 for huge
/// distances; use log_fidelity there.
double fidelity(const PairGeometry& geom);
double log_fidelity(const PairGeometry& geom);

/// Order-alpha Renyi divergence alpha * mah_sq / 2. Throws InvalidAlpha.
double renyi(const PairGeometry& geom, double alpha);

struct TvSandwich {
  double lower;
  double upper;
};

/// Fuchs-van de Graaf bounds on the total variation distance. Throws OutOfRange.
TvSandwich tv_sandwich(double F);

/// Exact hypothesis-testing relative entropy at type-I level eps. With a
/// common covariance the log-likelihood ratio is linear in y, so the
/// Neyman-Pearson optimum is a half-space test:
///   D_h^eps = -ln Phi(Phi^-1(1 - eps) - sqrt(mah_sq)).
/// Throws OutOfRange unless eps is in (0, 1).
double dh_exact(const PairGeometry& geom, double eps);

/// Upper bound on dh_exact through the order-alpha Renyi divergence:
/// D_alpha + alpha/(alpha-1) * ln(1/(1-eps)), alpha > 1.
double dh_renyi_upper_bound(const PairGeometry& geom, double alpha, double eps);

}  // namespace dicode
