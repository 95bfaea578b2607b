#pragma once
// Independent references for the closed forms: direct quadrature of the
// defining integrals (n <= 2), exact chi-square tails for AWGN error
// probabilities, and a brute-force threshold search for D_h at n = 1.
// Nothing here goes through M = A^T Sigma^-1 A; densities are evaluated from
// A and Sigma directly.

#include "dicode/channel.hpp"

namespace dicode::oracle {

/// Integral of sqrt(p q) over a +-12 sd box. Throws QuadratureNonConvergence,
/// InvalidParameter for n > 2.
double fidelity_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2);

/// (1 / (alpha - 1)) ln of the integral of p^alpha q^(1-alpha).
double renyi_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2, double alpha);

/// Integral of |p - q| / 2.
double tv_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2);

/// P(chi^2_k > t).
double chi2_tail(int k, double t);

/// P(chi'^2_k(ncp) <= t) as a Poisson mixture of central CDFs; absolute
/// error below 1e-10. Throws SeriesNonConvergence.
double noncentral_chi2_cdf(int k, double ncp, double t);

/// -ln of the smallest q(L) over half-line tests L with p(L^c) <= eps, found
/// by a dense threshold grid plus bisection on the constraint boundary.
/// Exact at n = 1 because the likelihood ratio is monotone. Needs n = 1.
double dh_small_n_check(const ChannelModel& ch, const Vector& x, const Vector& x2, double eps);

}  // namespace dicode::oracle
