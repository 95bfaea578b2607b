#include "dicode/decoder.hpp"

#include "dicode/errors.hpp"
#include "dicode/simd.hpp"

namespace dicode {
namespace {

Eigen::Map<const Vector> as_vector(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

void check_dims(std::size_t a, std::size_t b, const Matrix& A) {
  if (a != b || static_cast<Eigen::Index>(a) != A.rows() || A.rows() != A.cols()) {
    raise(ErrorCode::DimensionMismatch, "decoder operands must all have length n");
  }
}

}  // namespace

DecoderSpec make_decoder(int n, double E1, const SpectralCache& cache) {
  DecoderSpec spec;
  spec.threshold = decoder_threshold(n, E1, cache);
  spec.E1 = E1;
  spec.regime = exponent_regime(E1);
  return spec;
}

bool identify_against_mean(std::span<const double> y, std::span<const double> mean,
                           const DecoderSpec& spec) {
  return simd::squared_distance(y, mean) <= spec.threshold;
}

bool identify(std::span<const double> y, std::span<const double> u, const Matrix& A,
              const DecoderSpec& spec) {
  check_dims(y.size(), u.size(), A);
  const Vector mean = A * as_vector(u);
  return identify_against_mean(y, {mean.data(), y.size()}, spec);
}

Vector pairwise_margin(std::span<const double> u_i, std::span<const double> u_j, const Matrix& A) {
  check_dims(u_i.size(), u_j.size(), A);
  return A * (as_vector(u_j) - as_vector(u_i));
}

}  // namespace dicode
