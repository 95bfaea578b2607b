#include <limits>

#include "kernel_table.hpp"

namespace dicode::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

std::size_t first_within_scalar(const double* rows, std::size_t count, std::size_t dim,
                                const double* q, double threshold_sq) {
  for (std::size_t r = 0; r < count; ++r) {
    if (squared_distance_scalar(rows + r * dim, q, dim) <= threshold_sq) return r;
  }
  return count;
}

double min_squared_distance_scalar(const double* rows, std::size_t count, std::size_t dim,
                                   const double* q) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < count; ++r) {
    const double d = squared_distance_scalar(rows + r * dim, q, dim);
    if (d < best) best = d;
  }
  return best;
}

}  // namespace

const KernelTable kScalarKernels{dot_scalar, squared_distance_scalar, first_within_scalar,
                                 min_squared_distance_scalar};

}  // namespace dicode::simd::detail
