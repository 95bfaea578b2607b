#pragma once
// Power-constrained sphere packings used as identification codebooks.
//
// Codewords are centres of radius-r balls drawn inside the ball of radius
// sqrt(nP) - r, pairwise more than 2r apart. Greedy random saturation (keep
// drawing until `budget` consecutive candidates are rejected) realises the
// 2^-n packing-density argument: a saturated packing's 2r-balls cover the
// centre ball, so N >= ((1 - eps) / (2 eps))^n with eps = r / sqrt(nP).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "dicode/channel.hpp"
#include "dicode/decoder.hpp"
#include "dicode/rng.hpp"

namespace dicode {

inline constexpr std::size_t kDefaultCodewordCap = std::size_t{1} << 20;

struct Codebook {
  int n = 0;
  std::vector<double> codewords;  // row-major, size() x n
  double r = 0.0;
  double eps = 0.0;  // r / sqrt(nP)
  double P = 0.0;
  double min_pairwise_dist = 0.0;  // +inf when size() == 1
  std::uint64_t seed = 0;
  bool saturated = false;  // stopped on the rejection budget, not the cap

  std::size_t size() const noexcept {
    return n > 0 ? codewords.size() / static_cast<std::size_t>(n) : 0;
  }
  std::span<const double> codeword(std::size_t i) const {
    const auto dim = static_cast<std::size_t>(n);
    return {codewords.data() + i * dim, dim};
  }
  /// sqrt(nP) - r, the radius codeword centres must stay within.
  double centre_radius() const;
};

/// Uniform draw from the solid ball of radius rho.
Vector sample_uniform_ball(int n, double rho, rng::Xoshiro256pp& rng);

/// Greedy saturation with candidates from the codebook RNG stream of `seed`.
/// Stops after `budget` consecutive rejections or `max_codewords` accepts.
/// Throws BudgetZero, InvalidParameter (r outside (0, sqrt(nP))).
Codebook construct_greedy(int n, double r, double P, std::uint64_t seed, std::uint64_t budget,
                          std::size_t max_codewords = kDefaultCodewordCap);

/// ceil(((1 - eps) / (2 eps))^n), saturating at UINT64_MAX.
std::uint64_t packing_size_lower_bound(int n, double eps);

struct PackingCertificate {
  std::size_t size = 0;
  double min_dist = 0.0;  // +inf for a single codeword
  double max_norm = 0.0;
  double required_min_dist = 0.0;  // 2r
  double allowed_max_norm = 0.0;  // sqrt(nP) - r
  bool distance_ok = false;
  bool norm_ok = false;
  bool pass = false;
};

/// Exhaustive pairwise re-check of the packing invariants. Norms get a
/// 1e-12 relative allowance for the rounding of the radial scaling.
PackingCertificate certify_packing(const Codebook& cb);

struct ConstructionLimits {
  std::size_t n_cap = kDefaultCodewordCap;
  /// When the predicted size exceeds n_cap: build a packing of exactly
  /// n_cap codewords (no size guarantee) instead of throwing SizeCapExceeded.
  bool allow_truncation = false;
  std::uint64_t budget = 0;  // 0: 5000 * n * target size
  int max_attempts = 4;  // first run plus three reseeded retries
};

struct Theorem3Code {
  Codebook codebook;
  DecoderSpec decoder;
  double E2_predicted = 0.0;
  double log2_N_target = 0.0;  // n log2((1 - eps) / (2 eps))
  std::uint64_t N_target = 0;
  bool truncated = false;
};

/// Linear-rate construction: eps^2 = (1+tau) nu_M sqrt(E1) / P, r = eps sqrt(nP),
/// greedy packing, distance decoder at exponent E1. Throws HypothesisViolated,
/// SizeCapExceeded, NumericalFailure (saturation target missed after retries).
Theorem3Code construct_from_theorem3(const ChannelModel& ch, const SpectralCache& cache, double E1,
                                     double tau, std::uint64_t seed,
                                     const ConstructionLimits& limits = {});

}  // namespace dicode
