#include <atomic>
#include <cstdlib>
#include <string>

#include "dicode/errors.hpp"
#include "dicode/simd.hpp"
#include "kernel_table.hpp"

namespace dicode::simd {
namespace {

using detail::KernelTable;

const KernelTable* table_for(Isa isa) noexcept {
  switch (isa) {
#if defined(DICODE_HAVE_AVX2)
    case Isa::Avx2: return &detail::kAvx2Kernels;
#endif
#if defined(DICODE_HAVE_NEON)
    case Isa::Neon: return &detail::kNeonKernels;
#endif
    default: return &detail::kScalarKernels;
  }
}

// DICODE_ISA=scalar|avx2|neon overrides detection (unsupported values are ignored).
Isa initial_isa() noexcept {
  if (const char* env = std::getenv("DICODE_ISA")) {
    const std::string v(env);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (v == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return detected_isa();
}

struct ActiveState {
  std::atomic<Isa> isa{initial_isa()};
  std::atomic<const KernelTable*> table{table_for(isa.load())};
};

ActiveState& state() {
  static ActiveState s;
  return s;
}

inline const KernelTable& kernels() { return *state().table.load(std::memory_order_relaxed); }

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) raise(ErrorCode::DimensionMismatch, "vector lengths differ");
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(DICODE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(DICODE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() noexcept {
  if (isa_supported(Isa::Avx2)) return Isa::Avx2;
  if (isa_supported(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

Isa active_isa() noexcept { return state().isa.load(); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) {
    raise(ErrorCode::InvalidParameter, "kernel variant '" + std::string(isa_name(isa)) +
                                           "' is not available on this machine");
  }
  state().isa.store(isa);
  state().table.store(table_for(isa));
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return kernels().dot(a.data(), b.data(), a.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  return kernels().squared_distance(a.data(), b.data(), a.size());
}

std::size_t first_within(std::span<const double> rows, std::size_t dim,
                         std::span<const double> q, double threshold_sq) {
  require_same_size(dim, q.size());
  if (dim == 0 || rows.size() % dim != 0) {
    raise(ErrorCode::DimensionMismatch, "row matrix is not a multiple of the dimension");
  }
  return kernels().first_within(rows.data(), rows.size() / dim, dim, q.data(), threshold_sq);
}

double min_squared_distance(std::span<const double> rows, std::size_t dim,
                            std::span<const double> q) {
  require_same_size(dim, q.size());
  if (dim == 0 || rows.size() % dim != 0) {
    raise(ErrorCode::DimensionMismatch, "row matrix is not a multiple of the dimension");
  }
  return kernels().min_squared_distance(rows.data(), rows.size() / dim, dim, q.data());
}

void lower_tri_matvec_add(std::span<const double> lower, std::size_t n,
                          std::span<const double> g, std::span<const double> base,
                          std::span<double> out) {
  if (lower.size() != n * n || g.size() != n || base.size() != n || out.size() != n) {
    raise(ErrorCode::DimensionMismatch, "lower_tri_matvec_add operand sizes");
  }
  const auto& k = kernels();
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = base[i] + k.dot(lower.data() + i * n, g.data(), i + 1);
  }
}

}  // namespace dicode::simd
