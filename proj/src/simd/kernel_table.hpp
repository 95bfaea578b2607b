#pragma once

#include <cstddef>

namespace dicode::simd::detail {

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  std::size_t (*first_within)(const double* rows, std::size_t count, std::size_t dim,
                              const double* q, double threshold_sq);
  double (*min_squared_distance)(const double* rows, std::size_t count, std::size_t dim,
                                 const double* q);
};

extern const KernelTable kScalarKernels;
#if defined(DICODE_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
#if defined(DICODE_HAVE_NEON)
extern const KernelTable kNeonKernels;
#endif

}  // namespace dicode::simd::detail
