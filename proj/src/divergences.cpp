#include "dicode/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dicode/errors.hpp"
#include "dicode/stats.hpp"

namespace dicode {

PairGeometry pair_geometry(const Vector& x, const Vector& x2, const SpectralCache& cache) {
  if (x.size() != x2.size() || x.size() != cache.M.rows()) {
    raise(ErrorCode::DimensionMismatch, "pair_geometry operands must have length n");
  }
  PairGeometry g;
  g.delta = x - x2;
  g.euc_sq = g.delta.squaredNorm();
  if (g.euc_sq == 0.0) return g;
  // M is SPD, so a nonzero delta can only round to a tiny positive value.
  g.mah_sq = std::max(g.delta.dot(cache.M * g.delta), std::numeric_limits<double>::min());
  return g;
}

double log_fidelity(const PairGeometry& geom) { return -geom.mah_sq / 8.0; }

double fidelity(const PairGeometry& geom) { return std::exp(log_fidelity(geom)); }

double renyi(const PairGeometry& geom, double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    raise(ErrorCode::InvalidAlpha, "alpha must lie in (0, inf) \\ {1}");
  }
  return 0.5 * alpha * geom.mah_sq;
}

TvSandwich tv_sandwich(double F) {
  if (!(F > 0.0 && F <= 1.0)) raise(ErrorCode::OutOfRange, "fidelity must lie in (0, 1]");
  return {1.0 - F, std::sqrt(1.0 - F * F)};
}

double dh_exact(const PairGeometry& geom, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) raise(ErrorCode::OutOfRange, "eps must lie in (0, 1)");
  const double s = std::sqrt(geom.mah_sq);
  return -stats::log_normal_cdf(stats::normal_quantile(1.0 - eps) - s);
}

double dh_renyi_upper_bound(const PairGeometry& geom, double alpha, double eps) {
  if (!(alpha > 1.0)) raise(ErrorCode::InvalidAlpha, "the D_h bound needs alpha > 1");
  if (!(eps > 0.0 && eps < 1.0)) raise(ErrorCode::OutOfRange, "eps must lie in (0, 1)");
  return renyi(geom, alpha) + alpha / (alpha - 1.0) * -std::log1p(-eps);
}

}  // namespace dicode
