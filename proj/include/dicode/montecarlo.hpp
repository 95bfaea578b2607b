#pragma once
// Monte Carlo estimation of the two identification error probabilities.
//
// Every trial draws its noise from an engine keyed by (master seed, stream,
// cell * trials + trial), and per-cell counts are integers, so the result
// is identical for any thread count or schedule.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dicode/channel.hpp"
#include "dicode/codebook.hpp"
#include "dicode/decoder.hpp"

namespace dicode {

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval. Throws OutOfRange on bad counts or level.
Interval binomial_ci(std::uint64_t successes, std::uint64_t trials, double level = 0.95);

enum class ErrorKind { Missed, FalseId };

/// One simulated (tested message i, sent message j) cell; i == j for missed identification.
struct CellCount {
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
  double d_sq = 0.0;  // ||A(u_j - u_i)||^2
};

struct ErrorEstimate {
  ErrorKind kind = ErrorKind::Missed;
  double p_hat = 0.0;  // worst cell
  std::uint64_t trials = 0;  // trials behind p_hat
  double ci_low = 0.0;
  double ci_high = 0.0;
  double level = 0.95;
  std::string ci_method = "wilson";
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  double p_mean = 0.0;  // pooled over all cells
  std::uint64_t total_errors = 0;
  std::uint64_t total_trials = 0;
  bool lower_bound_estimate = false;  // max taken over a restricted pair set
  std::vector<CellCount> cells;

  double ci_half_width() const { return 0.5 * (ci_high - ci_low); }
  /// p_hat, or the Wilson upper limit when no error was observed.
  double reported_value() const { return total_errors == 0 ? ci_high : p_hat; }
  /// reported_value() <= bound + 3 * CI half-width.
  bool within_bound(double bound) const;
};

struct MonteCarloOptions {
  unsigned threads = 1;  // speed only, never results
  double level = 0.95;
  std::size_t nearest_k = 8;
  std::size_t all_pairs_max_degree = 256;  // Auto: all pairs while N - 1 <= this
};

ErrorEstimate estimate_lambda1(const Codebook& cb, const DecoderSpec& spec, const ChannelModel& ch,
                               const SpectralCache& cache, std::uint64_t trials_per_msg,
                               std::uint64_t master_seed, const MonteCarloOptions& opts = {});

enum class PairStrategy { All, NearestK, Auto };

ErrorEstimate estimate_lambda2(const Codebook& cb, const DecoderSpec& spec, const ChannelModel& ch,
                               const SpectralCache& cache, std::uint64_t trials_per_pair,
                               PairStrategy strategy, std::uint64_t master_seed,
                               const MonteCarloOptions& opts = {});

}  // namespace dicode
