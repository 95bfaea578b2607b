#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dicode/errors.hpp"
#include "dicode/montecarlo.hpp"
#include "dicode/oracle.hpp"

using namespace dicode;

namespace {

struct Setup {
  ChannelModel ch;
  SpectralCache cache;
};

Setup awgn(int n, double sigma2 = 1.0, double P = 100.0) {
  PresetParams p;
  p.n = n;
  p.sigma2 = sigma2;
  p.P = P;
  auto ch = preset(PresetKind::Awgn, p);
  auto c = spectral_cache(ch);
  return {std::move(ch), std::move(c)};
}

Codebook manual(int n, std::vector<double> words, double P = 100.0) {
  Codebook cb;
  cb.n = n;
  cb.codewords = std::move(words);
  cb.P = P;
  cb.r = 0.1;
  cb.eps = cb.r / std::sqrt(n * P);
  return cb;
}

double sigma_binomial(double p, std::uint64_t trials) { return std::sqrt(p * (1 - p) / double(trials)); }

}  // namespace

TEST(BinomialCi, WilsonExamples) {
  const auto zero = binomial_ci(0, 100);
  EXPECT_EQ(zero.low, 0.0);
  EXPECT_NEAR(zero.high, 0.0370, 5e-5);
  const auto half = binomial_ci(50, 100);
  EXPECT_NEAR(0.5 * (half.low + half.high), 0.5, 1e-12);
  EXPECT_EQ(binomial_ci(100, 100).high, 1.0);
  EXPECT_THROW(binomial_ci(5, 4), Error);
  EXPECT_THROW(binomial_ci(1, 4, 1.0), Error);
}

TEST(Lambda1, InfiniteThresholdNeverMisses) {
  const auto s = awgn(3);
  const auto cb = manual(3, {0, 0, 0, 1, 1, 1});
  DecoderSpec spec{std::numeric_limits<double>::infinity(), 1.0, Regime::Sqrt};
  const auto e = estimate_lambda1(cb, spec, s.ch, s.cache, 500, 1);
  EXPECT_EQ(e.p_hat, 0.0);
  EXPECT_EQ(e.total_errors, 0u);
  EXPECT_EQ(e.total_trials, 1000u);
  EXPECT_EQ(e.reported_value(), e.ci_high);
}

TEST(Lambda1, ChiSquareOracle) {
  const auto s = awgn(10);
  const auto cb = manual(10, std::vector<double>(10, 0.0));
  DecoderSpec spec{20.0, 0.0, Regime::Sqrt};
  const std::uint64_t trials = 100000;
  const auto e = estimate_lambda1(cb, spec, s.ch, s.cache, trials, 77);
  const double want = oracle::chi2_tail(10, 20.0);
  EXPECT_NEAR(want, 0.02925, 1e-5);
  EXPECT_NEAR(e.p_hat, want, 3.0 * sigma_binomial(want, trials));
  EXPECT_LE(e.ci_low, e.p_hat);
  EXPECT_GE(e.ci_high, e.p_hat);
}

TEST(Lambda1, ThreadCountDoesNotChangeResult) {
  const auto s = awgn(6);
  std::vector<double> w;
  for (int i = 0; i < 5 * 6; ++i) w.push_back(0.3 * (i % 7) - 1.0);
  const auto cb = manual(6, w);
  DecoderSpec spec{8.0, 0.0, Regime::Sqrt};
  MonteCarloOptions one, four;
  four.threads = 4;
  const auto a = estimate_lambda1(cb, spec, s.ch, s.cache, 2000, 9, one);
  const auto b = estimate_lambda1(cb, spec, s.ch, s.cache, 2000, 9, four);
  EXPECT_EQ(a.p_hat, b.p_hat);
  EXPECT_EQ(a.total_errors, b.total_errors);
  EXPECT_EQ(a.worst_i, b.worst_i);
}

TEST(Lambda2, NeedsTwoCodewords) {
  const auto s = awgn(2);
  DecoderSpec spec{1.0, 0.0, Regime::Sqrt};
  try {
    estimate_lambda2(manual(2, {0, 0}), spec, s.ch, s.cache, 10, PairStrategy::All, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsufficientCodebook);
  }
}

TEST(Lambda2, TinyThresholdNeverAccepts) {
  const auto s = awgn(3);
  const auto cb = manual(3, {0, 0, 0, 2, 0, 0, 0, 2, 0});
  DecoderSpec spec{std::numeric_limits<double>::denorm_min(), 0.0, Regime::Sqrt};
  const auto e = estimate_lambda2(cb, spec, s.ch, s.cache, 300, PairStrategy::All, 3);
  EXPECT_EQ(e.p_hat, 0.0);
  EXPECT_EQ(e.cells.size(), 6u);
}

TEST(Lambda2, NoncentralChiSquareOracle) {
  const double sigma2 = 2.0;
  const auto s = awgn(4, sigma2);
  const auto cb = manual(4, {0, 0, 0, 0, 1.5, 1.0, 0, 0});
  const double T = 12.0;
  DecoderSpec spec{T, 0.0, Regime::Sqrt};
  const std::uint64_t trials = 100000;
  const auto e = estimate_lambda2(cb, spec, s.ch, s.cache, trials, PairStrategy::All, 5);
  const double d2 = 1.5 * 1.5 + 1.0;
  const double want = oracle::noncentral_chi2_cdf(4, d2 / sigma2, T / sigma2);
  for (const auto& cell : e.cells) {
    EXPECT_NEAR(cell.d_sq, d2, 1e-12);
    EXPECT_NEAR(double(cell.errors) / double(cell.trials), want, 3.0 * sigma_binomial(want, trials));
  }
}

TEST(Lambda2, NearestKRestrictsPairs) {
  const auto s = awgn(2);
  std::vector<double> w;
  for (int i = 0; i < 10; ++i) {
    w.push_back(i);
    w.push_back(0.0);
  }
  const auto cb = manual(2, w);
  DecoderSpec spec{4.0, 0.0, Regime::Sqrt};
  MonteCarloOptions opts;
  opts.nearest_k = 2;
  const auto near = estimate_lambda2(cb, spec, s.ch, s.cache, 100, PairStrategy::NearestK, 1, opts);
  EXPECT_EQ(near.cells.size(), 20u);
  EXPECT_TRUE(near.lower_bound_estimate);
  for (const auto& c : near.cells) EXPECT_LE(c.d_sq, 4.0);
  const auto all = estimate_lambda2(cb, spec, s.ch, s.cache, 100, PairStrategy::All, 1, opts);
  EXPECT_EQ(all.cells.size(), 90u);
  EXPECT_FALSE(all.lower_bound_estimate);
  const auto aut = estimate_lambda2(cb, spec, s.ch, s.cache, 100, PairStrategy::Auto, 1, opts);
  EXPECT_EQ(aut.cells.size(), 90u);
}

TEST(Lambda2, ThreadCountDoesNotChangeResult) {
  const auto s = awgn(3);
  const auto cb = manual(3, {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 1});
  DecoderSpec spec{4.0, 0.0, Regime::Sqrt};
  MonteCarloOptions one, many;
  many.threads = 8;
  const auto a = estimate_lambda2(cb, spec, s.ch, s.cache, 1000, PairStrategy::All, 2, one);
  const auto b = estimate_lambda2(cb, spec, s.ch, s.cache, 1000, PairStrategy::All, 2, many);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t k = 0; k < a.cells.size(); ++k) EXPECT_EQ(a.cells[k].errors, b.cells[k].errors);
  EXPECT_EQ(a.p_hat, b.p_hat);
  EXPECT_EQ(a.p_mean, b.p_mean);
}
