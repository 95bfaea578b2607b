#include "dicode/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "dicode/errors.hpp"
#include "dicode/simd.hpp"
#include "dicode/stats.hpp"

namespace dicode {
namespace {

// Noiseless outputs A u_i, row-major.
std::vector<double> transformed_codewords(const Codebook& cb, const ChannelModel& ch) {
  const auto n = static_cast<std::size_t>(cb.n);
  std::vector<double> out(cb.size() * n);
  for (std::size_t i = 0; i < cb.size(); ++i) {
    const auto u = cb.codeword(i);
    Eigen::Map<Vector>(out.data() + i * n, cb.n) =
        ch.A() * Eigen::Map<const Vector>(u.data(), cb.n);
  }
  return out;
}

void check_inputs(const Codebook& cb, const ChannelModel& ch, std::uint64_t trials) {
  if (cb.n != ch.n()) raise(ErrorCode::DimensionMismatch, "codebook and channel block lengths differ");
  if (cb.size() == 0) raise(ErrorCode::InsufficientCodebook, "empty codebook");
  if (trials == 0) raise(ErrorCode::InvalidParameter, "trials must be >= 1");
}

/// Runs `fn(cell_index)` over all cells on up to `threads` workers.
template <class Fn>
void parallel_cells(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t c = 0; c < count; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next.fetch_add(1); c < count; c = next.fetch_add(1)) fn(c);
    });
  }
}

/// Counts trials where the decision on `tested` disagrees with the truth.
/// y = sent + L g; `count_accepts` selects false identification vs missed.
std::uint64_t simulate_cell(const SpectralCache& cache, std::span<const double> sent,
                            std::span<const double> tested, double threshold, bool count_accepts,
                            std::uint64_t trials, std::uint64_t master_seed, rng::Stream stream,
                            std::uint64_t counter_base) {
  const std::size_t n = sent.size();
  const std::span<const double> lower{cache.chol_rows.data(), n * n};
  std::vector<double> g(n), y(n);
  std::uint64_t errors = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    auto engine = rng::engine_for(master_seed, stream, counter_base + t);
    std::normal_distribution<double> normal;
    for (auto& v : g) v = normal(engine);
    simd::lower_tri_matvec_add(lower, n, g, sent, y);
    const bool accept = simd::squared_distance(y, tested) <= threshold;
    if (accept == count_accepts) ++errors;
  }
  return errors;
}

ErrorEstimate summarize(ErrorKind kind, std::vector<CellCount> cells, double level) {
  ErrorEstimate est;
  est.kind = kind;
  est.level = level;
  double best = -1.0;
  for (const auto& c : cells) {
    est.total_errors += c.errors;
    est.total_trials += c.trials;
    const double p = static_cast<double>(c.errors) / static_cast<double>(c.trials);
    if (p > best) {
      best = p;
      est.p_hat = p;
      est.trials = c.trials;
      est.worst_i = c.i;
      est.worst_j = c.j;
      const Interval ci = binomial_ci(c.errors, c.trials, level);
      est.ci_low = ci.low;
      est.ci_high = ci.high;
    }
  }
  est.p_mean = est.total_trials ? static_cast<double>(est.total_errors) / est.total_trials : 0.0;
  est.cells = std::move(cells);
  return est;
}

}  // namespace

bool ErrorEstimate::within_bound(double bound) const {
  return reported_value() <= bound + 3.0 * ci_half_width();
}

Interval binomial_ci(std::uint64_t successes, std::uint64_t trials, double level) {
  if (trials == 0 || successes > trials) {
    raise(ErrorCode::OutOfRange, "binomial_ci needs 0 <= successes <= trials, trials >= 1");
  }
  if (!(level > 0.0 && level < 1.0)) raise(ErrorCode::OutOfRange, "level must lie in (0, 1)");
  const double z = stats::normal_quantile(1.0 - 0.5 * (1.0 - level));
  const double t = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double centre = (p + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / t + z2 / (4.0 * t * t)) / denom;
  Interval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) ci.low = 0.0;
  if (successes == trials) ci.high = 1.0;
  return ci;
}

ErrorEstimate estimate_lambda1(const Codebook& cb, const DecoderSpec& spec, const ChannelModel& ch,
                               const SpectralCache& cache, std::uint64_t trials_per_msg,
                               std::uint64_t master_seed, const MonteCarloOptions& opts) {
  check_inputs(cb, ch, trials_per_msg);
  const auto n = static_cast<std::size_t>(cb.n);
  const auto means = transformed_codewords(cb, ch);
  std::vector<CellCount> cells(cb.size());
  parallel_cells(cb.size(), opts.threads, [&](std::size_t i) {
    const std::span<const double> mean{means.data() + i * n, n};
    cells[i] = {i, i,
                simulate_cell(cache, mean, mean, spec.threshold, false, trials_per_msg, master_seed,
                              rng::Stream::MissedIdentification, i * trials_per_msg),
                trials_per_msg, 0.0};
  });
  return summarize(ErrorKind::Missed, std::move(cells), opts.level);
}

ErrorEstimate estimate_lambda2(const Codebook& cb, const DecoderSpec& spec, const ChannelModel& ch,
                               const SpectralCache& cache, std::uint64_t trials_per_pair,
                               PairStrategy strategy, std::uint64_t master_seed,
                               const MonteCarloOptions& opts) {
  check_inputs(cb, ch, trials_per_pair);
  const std::size_t N = cb.size();
  if (N < 2) raise(ErrorCode::InsufficientCodebook, "false identification needs N >= 2");
  const auto n = static_cast<std::size_t>(cb.n);
  const auto means = transformed_codewords(cb, ch);
  auto mean = [&](std::size_t i) { return std::span<const double>{means.data() + i * n, n}; };

  if (strategy == PairStrategy::Auto) {
    strategy = N - 1 <= opts.all_pairs_max_degree ? PairStrategy::All : PairStrategy::NearestK;
  }
  const std::size_t k = strategy == PairStrategy::All ? N - 1 : std::min(opts.nearest_k, N - 1);
  if (k == 0) raise(ErrorCode::InvalidParameter, "nearest_k must be >= 1");

  std::vector<CellCount> cells;
  cells.reserve(N * k);
  std::vector<std::pair<double, std::size_t>> dist(N - 1);
  for (std::size_t i = 0; i < N; ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < N; ++j) {
      if (j != i) dist[m++] = {simd::squared_distance(mean(i), mean(j)), j};
    }
    if (k < N - 1) {
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
    }
    for (std::size_t q = 0; q < k; ++q) cells.push_back({i, dist[q].second, 0, trials_per_pair, dist[q].first});
  }

  parallel_cells(cells.size(), opts.threads, [&](std::size_t c) {
    auto& cell = cells[c];
    cell.errors = simulate_cell(cache, mean(cell.j), mean(cell.i), spec.threshold, true,
                                trials_per_pair, master_seed, rng::Stream::FalseIdentification,
                                c * trials_per_pair);
  });
  auto est = summarize(ErrorKind::FalseId, std::move(cells), opts.level);
  est.lower_bound_estimate = strategy == PairStrategy::NearestK;
  return est;
}

}  // namespace dicode
