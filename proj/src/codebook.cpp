#include "dicode/codebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "dicode/bounds.hpp"
#include "dicode/errors.hpp"
#include "dicode/simd.hpp"

namespace dicode {

double Codebook::centre_radius() const { return std::sqrt(n * P) - r; }

namespace {

// Shared by the public sampler and the greedy loop; the distributions are
// reset so both consume the engine identically.
void fill_uniform_ball(std::span<double> v, double rho, rng::Xoshiro256pp& rng,
                       std::normal_distribution<double>& normal,
                       std::uniform_real_distribution<double>& uniform) {
  normal.reset();
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (auto& x : v) {
      x = normal(rng);
      norm_sq += x * x;
    }
  } while (norm_sq == 0.0);
  const double radius = rho * std::pow(uniform(rng), 1.0 / static_cast<double>(v.size()));
  const double scale = radius / std::sqrt(norm_sq);
  for (auto& x : v) x *= scale;
}

}  // namespace

Vector sample_uniform_ball(int n, double rho, rng::Xoshiro256pp& rng) {
  if (n < 1) raise(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(rho > 0.0)) raise(ErrorCode::NonPositiveRadius, "ball radius must be > 0");
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  Vector v(n);
  fill_uniform_ball({v.data(), static_cast<std::size_t>(n)}, rho, rng, normal, uniform);
  return v;
}

std::uint64_t packing_size_lower_bound(int n, double eps) {
  const double log_target = n * std::log((1.0 - eps) / (2.0 * eps));
  if (log_target <= 0.0) return 1;
  if (log_target >= 64.0 * std::numbers::ln2) return std::numeric_limits<std::uint64_t>::max();
  const double target = std::exp(log_target);
  // Guard exp rounding just above an integer.
  const double rounded = std::round(target);
  if (std::abs(target - rounded) <= 1e-9 * rounded) return static_cast<std::uint64_t>(rounded);
  return static_cast<std::uint64_t>(std::ceil(target));
}

namespace {

// Uniform grid over the first k coordinates with cells of side 2r. A
// codeword within 2r of a candidate differs from it by at most 2r in every
// coordinate, so only the 3^k neighbouring cells can hold a conflict; the
// accept/reject decision is the same as a full scan.
class ConflictGrid {
 public:
  ConflictGrid(std::size_t dim, double rho, double r) : dim_(dim), lo_(-rho), side_(2.0 * r * (1.0 + 1e-9)) {
    per_axis_ = static_cast<long>(std::ceil(2.0 * rho / side_)) + 1;
    constexpr long kMaxCells = long{1} << 20;
    long cells = 1;
    if (per_axis_ >= 4) {
      while (axes_ < std::min<std::size_t>(dim, 4) && cells * per_axis_ <= kMaxCells) {
        cells *= per_axis_;
        ++axes_;
      }
    }
    rows_.resize(static_cast<std::size_t>(cells));
    // Neighbour deltas, home cell first.
    deltas_.assign(axes_, 0);
    std::size_t count = 1;
    for (std::size_t a = 0; a < axes_; ++a) {
      for (long d : {-1L, 1L}) {
        for (std::size_t i = 0; i < count; ++i) {
          for (std::size_t b = 0; b < axes_; ++b) deltas_.push_back(deltas_[i * axes_ + b]);
          deltas_[deltas_.size() - axes_ + a] = d;
        }
      }
      count *= 3;
    }
    neighbours_ = count;
  }

  bool conflicts(std::span<const double> q, double threshold_sq) const {
    long home[4];
    for (std::size_t a = 0; a < axes_; ++a) home[a] = axis_index(q[a]);
    for (std::size_t k = 0; k < neighbours_; ++k) {
      const long* d = deltas_.data() + k * axes_;
      long cell = 0, stride = 1;
      bool inside = true;
      for (std::size_t a = 0; a < axes_ && inside; ++a) {
        const long idx = home[a] + d[a];
        inside = idx >= 0 && idx < per_axis_;
        cell += idx * stride;
        stride *= per_axis_;
      }
      if (!inside) continue;
      const auto& block = rows_[static_cast<std::size_t>(cell)];
      if (block.empty()) continue;
      if (simd::first_within(block, dim_, q, threshold_sq) != block.size() / dim_) return true;
    }
    return false;
  }

  void insert(std::span<const double> q) {
    long cell = 0, stride = 1;
    for (std::size_t a = 0; a < axes_; ++a) {
      cell += axis_index(q[a]) * stride;
      stride *= per_axis_;
    }
    auto& block = rows_[static_cast<std::size_t>(cell)];
    block.insert(block.end(), q.begin(), q.end());
  }

 private:
  long axis_index(double x) const {
    const double f = std::floor((x - lo_) / side_);
    return static_cast<long>(std::clamp(f, 0.0, static_cast<double>(per_axis_ - 1)));
  }

  std::size_t dim_;
  double lo_;
  double side_;
  long per_axis_ = 0;
  std::size_t axes_ = 0;
  std::size_t neighbours_ = 1;
  std::vector<std::vector<double>> rows_;
  std::vector<long> deltas_;
};

}  // namespace

Codebook construct_greedy(int n, double r, double P, std::uint64_t seed, std::uint64_t budget,
                          std::size_t max_codewords) {
  if (budget == 0) raise(ErrorCode::BudgetZero, "rejection budget must be >= 1");
  if (n < 1) raise(ErrorCode::InvalidParameter, "dimension must be >= 1");
  if (!(P > 0.0)) raise(ErrorCode::NonPositivePower, "P must be > 0");
  const double outer = std::sqrt(n * P);
  if (!(r > 0.0 && r < outer)) {
    raise(ErrorCode::InvalidParameter, "packing radius must lie in (0, sqrt(nP))");
  }
  if (max_codewords == 0) raise(ErrorCode::InvalidParameter, "codeword cap must be >= 1");

  Codebook cb;
  cb.n = n;
  cb.r = r;
  cb.P = P;
  cb.eps = r / outer;
  cb.seed = seed;

  const auto dim = static_cast<std::size_t>(n);
  const double rho = outer - r;
  const double min_sq_required = 4.0 * r * r;
  double min_sq = std::numeric_limits<double>::infinity();
  auto rng = rng::engine_for(seed, rng::Stream::Codebook, 0);

  ConflictGrid grid(dim, rho, r);
  std::uint64_t rejections = 0;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  std::vector<double> cand(dim);
  while (rejections < budget) {
    fill_uniform_ball(cand, rho, rng, normal, uniform);
    const std::span<const double> q{cand};
    if (grid.conflicts(q, min_sq_required)) {
      ++rejections;
      continue;
    }
    const std::span<const double> rows{cb.codewords};
    if (!cb.codewords.empty()) min_sq = std::min(min_sq, simd::min_squared_distance(rows, dim, q));
    cb.codewords.insert(cb.codewords.end(), cand.data(), cand.data() + dim);
    grid.insert(q);
    rejections = 0;
    if (cb.size() >= max_codewords) break;
  }
  cb.saturated = rejections >= budget;
  cb.min_pairwise_dist = std::sqrt(min_sq);
  return cb;
}

PackingCertificate certify_packing(const Codebook& cb) {
  PackingCertificate cert;
  cert.size = cb.size();
  cert.required_min_dist = 2.0 * cb.r;
  cert.allowed_max_norm = cb.centre_radius();
  const auto dim = static_cast<std::size_t>(cb.n);

  double min_sq = std::numeric_limits<double>::infinity();
  double max_norm_sq = 0.0;
  for (std::size_t j = 0; j < cert.size; ++j) {
    const auto u = cb.codeword(j);
    max_norm_sq = std::max(max_norm_sq, simd::dot(u, u));
    if (j > 0) {
      const std::span<const double> prefix{cb.codewords.data(), j * dim};
      min_sq = std::min(min_sq, simd::min_squared_distance(prefix, dim, u));
    }
  }
  cert.min_dist = std::sqrt(min_sq);
  cert.max_norm = std::sqrt(max_norm_sq);
  cert.distance_ok = cert.size >= 1 && cert.min_dist > cert.required_min_dist;
  cert.norm_ok = cert.max_norm <= cert.allowed_max_norm * (1.0 + 1e-12);
  cert.pass = cert.distance_ok && cert.norm_ok;
  return cert;
}

Theorem3Code construct_from_theorem3(const ChannelModel& ch, const SpectralCache& cache, double E1,
                                     double tau, std::uint64_t seed,
                                     const ConstructionLimits& limits) {
  if (!(E1 > 0.0) || !std::isfinite(E1)) {
    raise(ErrorCode::HypothesisViolated, "E1 > 0 violated");
  }
  if (!(tau > 0.0)) raise(ErrorCode::HypothesisViolated, "tau > 0 violated");
  const int n = ch.n();
  const double P = ch.P();
  const double nu_M = cache.nu_M;
  const double g = regime_scale(E1);
  if (!(g < P / (9.0 * tau * nu_M))) {
    raise(ErrorCode::HypothesisViolated, "sqrt(E1) < P/(9 tau nu_M) violated");
  }
  const double eps = std::sqrt((1.0 + tau) * nu_M * g / P);
  if (!(eps < 1.0 / 3.0)) {
    raise(ErrorCode::HypothesisViolated, "eps = " + std::to_string(eps) + " violates eps < 1/3");
  }
  if (!feasibility(eps, E1, nu_M, P)) {
    raise(ErrorCode::HypothesisViolated, "P eps^2 > nu_M sqrt(E1) violated");
  }

  Theorem3Code out;
  out.decoder = make_decoder(n, E1, cache);
  out.E2_predicted = type2_exponent(eps, E1, nu_M, P);
  out.log2_N_target = n * std::log2((1.0 - eps) / (2.0 * eps));
  out.N_target = packing_size_lower_bound(n, eps);

  const double r = eps * std::sqrt(n * P);
  std::size_t cap = limits.n_cap;
  if (out.log2_N_target > std::log2(static_cast<double>(limits.n_cap))) {
    if (!limits.allow_truncation) {
      raise(ErrorCode::SizeCapExceeded,
            "predicted log2 N = " + std::to_string(out.log2_N_target) + " exceeds the cap of " +
                std::to_string(limits.n_cap) + " codewords");
    }
    out.truncated = true;
  }

  std::uint64_t budget = limits.budget;
  if (budget == 0) {
    const double target = out.truncated ? static_cast<double>(cap) : static_cast<double>(out.N_target);
    budget = static_cast<std::uint64_t>(std::min(5000.0 * n * target, 1e15));
  }

  const int attempts = std::max(1, limits.max_attempts);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const std::uint64_t run_seed =
        attempt == 0 ? seed : rng::derive_seed(seed, rng::Stream::Codebook, attempt);
    Codebook cb = construct_greedy(n, r, P, run_seed, budget, cap);
    const double log2N = std::log2(static_cast<double>(cb.size()));
    if (log2N > log2_packing_count_upper(n, P, r) + 1e-9) {
      raise(ErrorCode::NumericalFailure, "constructed packing exceeds the volumetric cap");
    }
    if (out.truncated || cb.size() >= out.N_target) {
      out.codebook = std::move(cb);
      return out;
    }
  }
  raise(ErrorCode::NumericalFailure,
        "greedy packing missed the saturation target after " + std::to_string(attempts) + " runs");
}

}  // namespace dicode
