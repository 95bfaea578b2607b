#pragma once
// Vector kernels used on the hot paths: greedy packing scans, the decoder
// statistic and correlated-noise synthesis. Every kernel has a scalar
// reference and optional AVX2/NEON variants; the variant is picked once at
// startup from the running CPU and can be pinned for testing.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace dicode::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the CPU can execute it.
bool isa_supported(Isa isa) noexcept;

/// Best supported variant on this machine.
Isa detected_isa() noexcept;

Isa active_isa() noexcept;

/// Pins the kernel variant process-wide. Throws InvalidParameter when the
/// variant is unavailable. Not meant to be called while kernels are running.
void set_active_isa(Isa isa);

/// All variants usable on this machine, scalar first.
std::vector<Isa> available_isas();

double dot(std::span<const double> a, std::span<const double> b);

double squared_distance(std::span<const double> a, std::span<const double> b);

/// `rows` is a row-major matrix with `dim` columns. Returns the index of the
/// first row whose squared distance to `q` is <= `threshold_sq`, or the row
/// count when no row qualifies.
std::size_t first_within(std::span<const double> rows, std::size_t dim,
                         std::span<const double> q, double threshold_sq);

/// Minimum squared distance from `q` to any row; +inf for an empty matrix.
double min_squared_distance(std::span<const double> rows, std::size_t dim,
                            std::span<const double> q);

/// out = base + L * g for a row-major lower-triangular n x n matrix L.
void lower_tri_matvec_add(std::span<const double> lower, std::size_t n,
                          std::span<const double> g, std::span<const double> base,
                          std::span<double> out);

}  // namespace dicode::simd
