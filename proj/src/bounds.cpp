#include "dicode/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dicode/errors.hpp"

namespace dicode {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void require_positive_exponent(double E, const char* what) {
  if (!(E > 0.0) || !std::isfinite(E)) {
    raise(ErrorCode::NonPositiveExponent, std::string(what) + " must be a positive finite exponent");
  }
}

void require_block_length(long long n) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "block length must be >= 1");
}

}  // namespace

Regime exponent_regime(double E1) noexcept { return E1 > 1.0 ? Regime::Linear : Regime::Sqrt; }

double regime_scale(double E1) noexcept {
  return exponent_regime(E1) == Regime::Linear ? E1 : std::sqrt(E1);
}

double ErrorExponents::lambda1() const { return lambda_from_exponent(E1, n); }
double ErrorExponents::lambda2() const { return lambda_from_exponent(E2, n); }

double converse_rate_symmetric(int n, double E, double nu_max, double P) {
  require_block_length(n);
  if (!(n * E >= std::log(16.0))) {
    raise(ErrorCode::ExponentTooSmall, "nE = " + std::to_string(n * E) + " < ln 16");
  }
  return 0.5 * std::log2(8.0 * nu_max * P / E);
}

double packing_radius_symmetric(int n, double E, double nu_max) {
  require_block_length(n);
  const double excess = n * E - 2.0 * kLn2;
  if (!(excess >= 0.0)) {
    raise(ErrorCode::ExponentTooSmall, "nE = " + std::to_string(n * E) + " < 2 ln 2");
  }
  return std::sqrt(excess / nu_max);
}

double converse_rate_asymmetric(double E, double nu_max, double P) {
  require_positive_exponent(E, "E");
  return std::log2(std::sqrt(2.0 * nu_max * P / E) + 1.0);
}

double packing_radius_asymmetric(int n, double E, double nu_max) {
  require_block_length(n);
  require_positive_exponent(E, "E");
  return 0.5 * std::sqrt(2.0 * n * E / nu_max);
}

double log_ball_volume(int n, double rho) {
  require_block_length(n);
  if (!(rho > 0.0)) raise(ErrorCode::NonPositiveRadius, "ball radius must be > 0");
  const double half_n = 0.5 * n;
  return half_n * std::log(std::numbers::pi) - std::lgamma(half_n + 1.0) + n * std::log(rho);
}

double log2_packing_count_upper(int n, double P, double r) {
  require_block_length(n);
  if (!(r > 0.0)) raise(ErrorCode::NonPositiveRadius, "packing radius must be > 0");
  return n * std::log2(2.0 * std::sqrt(n * P) / r);
}

double decoder_threshold(int n, double E1, double trace_sigma, double nu_M) {
  require_block_length(n);
  require_positive_exponent(E1, "E1");
  return trace_sigma + 4.0 * nu_M * n * regime_scale(E1);
}

double decoder_threshold(int n, double E1, const SpectralCache& cache) {
  return decoder_threshold(n, E1, cache.trace_sigma, cache.nu_M);
}

bool feasibility(double eps, double E1, double nu_M, double P) {
  if (!(eps > 0.0 && eps < 1.0 / 3.0)) {
    raise(ErrorCode::EpsOutOfRange, "eps = " + std::to_string(eps) + " is outside (0, 1/3)");
  }
  require_positive_exponent(E1, "E1");
  return P * eps * eps > nu_M * regime_scale(E1);
}

double type2_exponent(double eps, double E1, double nu_M, double P) {
  require_positive_exponent(E1, "E1");
  const double margin = eps * eps * P - nu_M * regime_scale(E1);
  if (margin < 0.0) {
    raise(ErrorCode::Infeasible, "P eps^2 < nu_M sqrt(E1): no type-II left tail");
  }
  return 2.0 * margin * margin / (nu_M * (nu_M + P));
}

LinearAchievability achievable_rate_linear(double E1, double tau, double nu_M, double P) {
  if (!(tau > 0.0)) raise(ErrorCode::HypothesisViolated, "tau > 0 violated");
  if (!(E1 > 0.0)) raise(ErrorCode::HypothesisViolated, "E1 > 0 violated");
  const double g = regime_scale(E1);
  const double cap = P / (9.0 * tau * nu_M);
  if (!(g < cap)) {
    raise(ErrorCode::HypothesisViolated,
          exponent_regime(E1) == Regime::Sqrt ? "sqrt(E1) < P/(9 tau nu_M) violated"
                                              : "E1 < P/(9 tau nu_M) violated");
  }
  LinearAchievability out;
  out.eps = std::sqrt((1.0 + tau) * nu_M * g / P);
  out.E2 = 2.0 * tau * tau * g * g / (1.0 + P / nu_M);
  const double arg = std::sqrt(P / (4.0 * nu_M * (1.0 + tau) * g)) - 0.5;
  if (arg <= 1.0) {
    out.degenerate = true;
    out.rate_bits = 0.0;
  } else {
    out.rate_bits = std::log2(arg);
  }
  return out;
}

LinearithmicAchievability achievable_rate_linearithmic(long long n, double beta, double tau,
                                                       double nu_M, double P) {
  if (n < 2) raise(ErrorCode::InvalidParameter, "linearithmic rate needs n >= 2");
  if (!(beta > 0.0 && beta < 1.0)) raise(ErrorCode::InvalidParameter, "beta must lie in (0, 1)");
  if (!(tau > 0.0)) raise(ErrorCode::InvalidParameter, "tau must be > 0");
  const double nd = static_cast<double>(n);
  const double log2n = std::log2(nd);
  LinearithmicAchievability out;
  out.E1 = std::pow(nd, -beta);
  out.E2 = 2.0 * tau * tau * out.E1 / (1.0 + P / nu_M);
  // log2(n^{beta/4} sqrt(P) / (4 sqrt((1+tau) nu_M))), split to avoid overflow.
  const double per_symbol = 0.25 * beta * log2n + 0.5 * std::log2(P / (16.0 * (1.0 + tau) * nu_M));
  out.log2_N_lower = nd * per_symbol;
  out.normalized_rate = per_symbol / log2n;
  return out;
}

double exponent_from_lambda(double lambda, int n) {
  require_block_length(n);
  if (!(lambda > 0.0 && lambda <= 1.0)) raise(ErrorCode::OutOfRange, "lambda must lie in (0, 1]");
  return -std::log(lambda) / n;
}

double lambda_from_exponent(double E, int n) {
  require_block_length(n);
  if (!(E >= 0.0)) raise(ErrorCode::OutOfRange, "exponent must be >= 0");
  return std::exp(-n * E);
}

BoundReport bound_report(int n, double E1, double E2, const SpectralCache& cache, double P) {
  require_block_length(n);
  BoundReport rep;
  rep.n = n;
  const bool has1 = E1 > 0.0;
  const bool has2 = E2 > 0.0;
  rep.E_min = std::min(E1, E2);

  if (has1 && has2 && n * rep.E_min >= std::log(16.0)) {
    rep.R_conv_symmetric_bits = converse_rate_symmetric(n, rep.E_min, cache.nu_max, P);
    rep.r_symmetric = packing_radius_symmetric(n, rep.E_min, cache.nu_max);
  } else if (has1 && has2) {
    rep.notes.emplace_back("thm1_inapplicable:nE_min<ln16");
  } else {
    rep.notes.emplace_back("thm1_inapplicable:zero_exponent");
  }

  if (has1 || has2) {
    rep.E_asymmetric = std::max(E1, E2);
    rep.R_conv_asymmetric_bits = converse_rate_asymmetric(rep.E_asymmetric, cache.nu_max, P);
    rep.r_asymmetric = packing_radius_asymmetric(n, rep.E_asymmetric, cache.nu_max);
    if (!has1) rep.notes.emplace_back("stein_regime");
    if (!has2) rep.notes.emplace_back("sanov_regime");
  } else {
    rep.notes.emplace_back("thm2_inapplicable:no_positive_exponent");
  }

  const auto r = rep.r_symmetric ? rep.r_symmetric : rep.r_asymmetric;
  if (r && *r > 0.0) rep.log2_N_upper = log2_packing_count_upper(n, P, *r);
  return rep;
}

}  // namespace dicode
