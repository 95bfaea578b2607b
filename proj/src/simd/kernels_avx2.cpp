// AVX2 + FMA variants. Built with -mavx2 -mfma; only reached after
// __builtin_cpu_supports confirms both extensions.

#include <immintrin.h>

#include <limits>

#include "kernel_table.hpp"

namespace dicode::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  if (i + 4 <= n) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  if (i + 4 <= n) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    i += 4;
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::size_t first_within_avx2(const double* rows, std::size_t count, std::size_t dim,
                              const double* q, double threshold_sq) {
  for (std::size_t r = 0; r < count; ++r) {
    if (squared_distance_avx2(rows + r * dim, q, dim) <= threshold_sq) return r;
  }
  return count;
}

double min_squared_distance_avx2(const double* rows, std::size_t count, std::size_t dim,
                                 const double* q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < count; ++r) {
    const double d = squared_distance_avx2(rows + r * dim, q, dim);
    if (d < best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kAvx2Kernels{dot_avx2, squared_distance_avx2, first_within_avx2,
                               min_squared_distance_avx2};

}  // namespace dicode::simd::detail
