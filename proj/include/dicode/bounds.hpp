#pragma once
// Rate-reliability formulas for deterministic identification over linear
// Gaussian channels. Exponents E are in nats (lambda = e^{-nE}); rates and
// code sizes are in bits.

#include <optional>
#include <string>
#include <vector>

#include "dicode/channel.hpp"

namespace dicode {

/// Exponent regime of the distance decoder: below E1 = 1 the threshold
/// margin scales with sqrt(E1), above it with E1.
enum class Regime { Sqrt, Linear };

Regime exponent_regime(double E1) noexcept;

/// sqrt(E1) in the Sqrt regime, E1 in the Linear regime.
double regime_scale(double E1) noexcept;

struct ErrorExponents {
  double E1 = 0.0;
  double E2 = 0.0;
  int n = 1;

  double lambda1() const;
  double lambda2() const;
};

// Converse, symmetric exponents (both errors at least e^{-nE}).

/// 1/2 log2(8 nu_max P / E). Throws ExponentTooSmall when nE < ln 16.
double converse_rate_symmetric(int n, double E, double nu_max, double P);

/// sqrt((nE - 2 ln 2) / nu_max): every valid code has pairwise codeword
/// distance above twice this. Throws ExponentTooSmall when nE < 2 ln 2.
double packing_radius_symmetric(int n, double E, double nu_max);

// Converse, maximally asymmetric (Stein / Sanov) regimes.

/// log2(sqrt(2 nu_max P / E) + 1). Throws NonPositiveExponent.
double converse_rate_asymmetric(double E, double nu_max, double P);

/// 1/2 sqrt(2nE / nu_max). Throws NonPositiveExponent.
double packing_radius_asymmetric(int n, double E, double nu_max);

/// ln Vol(ball of radius rho in R^n).
double log_ball_volume(int n, double rho);

/// Volumetric cap n log2(2 sqrt(nP) / r) on log2 N for radius-r packings
/// centred in the power ball. Throws NonPositiveRadius.
double log2_packing_count_upper(int n, double P, double r);

// Achievability through distance decoding.

/// Tr Sigma + 4 nu_M n sqrt(E1) (E1 <= 1) or Tr Sigma + 4 nu_M n E1 (E1 > 1).
double decoder_threshold(int n, double E1, double trace_sigma, double nu_M);
double decoder_threshold(int n, double E1, const SpectralCache& cache);

/// P eps^2 > nu_M sqrt(E1) (sqrt -> identity for E1 > 1). Throws
/// EpsOutOfRange unless eps is in (0, 1/3), NonPositiveExponent if E1 <= 0.
bool feasibility(double eps, double E1, double nu_M, double P);

/// 2 (eps^2 P - nu_M sqrt(E1))^2 / (nu_M (nu_M + P)). Throws Infeasible when
/// the margin is negative; zero margin gives 0.
double type2_exponent(double eps, double E1, double nu_M, double P);

struct LinearAchievability {
  double rate_bits = 0.0;  // 0 when degenerate
  double E2 = 0.0;
  double eps = 0.0;
  bool degenerate = false;  // the log argument was <= 1 (equivalently eps >= 1/3)
};

/// Linear-rate construction with eps^2 = (1+tau) nu_M sqrt(E1) / P.
/// Throws HypothesisViolated naming the failed inequality.
LinearAchievability achievable_rate_linear(double E1, double tau, double nu_M, double P);

struct LinearithmicAchievability {
  double log2_N_lower = 0.0;
  double E1 = 0.0;
  double E2 = 0.0;
  double normalized_rate = 0.0;  // log2_N_lower / (n log2 n)
};

/// Polynomially vanishing exponent E1 = n^-beta. Needs n >= 2.
LinearithmicAchievability achievable_rate_linearithmic(long long n, double beta, double tau,
                                                       double nu_M, double P);

/// E = -ln(lambda) / n. Throws OutOfRange unless lambda is in (0, 1].
double exponent_from_lambda(double lambda, int n);
double lambda_from_exponent(double E, int n);

struct BoundReport {
  int n = 0;
  double E_min = 0.0;
  std::optional<double> R_conv_symmetric_bits;
  std::optional<double> R_conv_asymmetric_bits;
  std::optional<double> r_symmetric;
  std::optional<double> r_asymmetric;
  std::optional<double> log2_N_upper;
  double E_asymmetric = 0.0;  // exponent fed to the asymmetric converse
  std::vector<std::string> notes;
};

/// Evaluates every applicable converse. A zero exponent means "not required
/// to vanish exponentially" (Stein regime: E1 = 0; Sanov regime: E2 = 0).
/// Inapplicable bounds are left empty with a note instead of throwing.
BoundReport bound_report(int n, double E1, double E2, const SpectralCache& cache, double P);

}  // namespace dicode
