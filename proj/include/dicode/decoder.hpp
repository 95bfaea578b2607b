#pragma once
// Distance decoder: message i is identified iff ||y - A u_i||^2 <= threshold.
// The statistic is an absolute squared distance, never normalized by n.

#include <span>

#include "dicode/bounds.hpp"
#include "dicode/channel.hpp"

namespace dicode {

struct DecoderSpec {
  double threshold = 0.0;
  double E1 = 0.0;
  Regime regime = Regime::Sqrt;
};

/// Threshold Tr Sigma + 4 nu_M n sqrt(E1) (or E1 above 1). Throws NonPositiveExponent.
DecoderSpec make_decoder(int n, double E1, const SpectralCache& cache);

/// Ties at the threshold accept. Throws DimensionMismatch.
bool identify(std::span<const double> y, std::span<const double> u, const Matrix& A,
              const DecoderSpec& spec);

/// Same test against a precomputed noiseless output A u.
bool identify_against_mean(std::span<const double> y, std::span<const double> mean,
                           const DecoderSpec& spec);

/// d = A (u_j - u_i), the displacement whose norm controls false identification of i under j.
Vector pairwise_margin(std::span<const double> u_i, std::span<const double> u_j, const Matrix& A);

}  // namespace dicode
