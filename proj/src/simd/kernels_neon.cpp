// NEON variants for aarch64 (Advanced SIMD is mandatory there).

#include <arm_neon.h>

#include <limits>

#include "kernel_table.hpp"

namespace dicode::simd::detail {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t d0 = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
    const float64x2_t d1 = vsubq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    acc0 = vfmaq_f64(acc0, d0, d0);
    acc1 = vfmaq_f64(acc1, d1, d1);
  }
  double acc = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::size_t first_within_neon(const double* rows, std::size_t count, std::size_t dim,
                              const double* q, double threshold_sq) {
  for (std::size_t r = 0; r < count; ++r) {
    if (squared_distance_neon(rows + r * dim, q, dim) <= threshold_sq) return r;
  }
  return count;
}

double min_squared_distance_neon(const double* rows, std::size_t count, std::size_t dim,
                                 const double* q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < count; ++r) {
    const double d = squared_distance_neon(rows + r * dim, q, dim);
    if (d < best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kNeonKernels{dot_neon, squared_distance_neon, first_within_neon,
                               min_squared_distance_neon};

}  // namespace dicode::simd::detail
