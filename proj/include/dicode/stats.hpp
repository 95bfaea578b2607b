#pragma once

namespace dicode::stats {

/// Standard normal CDF, erfc based (absolute error well below 1e-12).
double normal_cdf(double x);

/// ln Phi(x), finite far into the lower tail where Phi underflows.
double log_normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1); throws OutOfRange otherwise.
double normal_quantile(double p);

}  // namespace dicode::stats
