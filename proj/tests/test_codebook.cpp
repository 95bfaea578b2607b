#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dicode/bounds.hpp"
#include "dicode/codebook.hpp"
#include "dicode/errors.hpp"

using namespace dicode;

namespace {

Codebook manual(int n, std::vector<double> words, double r, double P) {
  Codebook cb;
  cb.n = n;
  cb.codewords = std::move(words);
  cb.r = r;
  cb.P = P;
  cb.eps = r / std::sqrt(n * P);
  return cb;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::IoError;
}

ChannelModel awgn(int n, double P) {
  PresetParams p;
  p.n = n;
  p.P = P;
  return preset(PresetKind::Awgn, p);
}

}  // namespace

TEST(UniformBall, InsideAndUnbiased) {
  auto eng = rng::engine_for(3, rng::Stream::Codebook, 0);
  const int n = 3, N = 100000;
  const double rho = 2.0;
  Vector mean = Vector::Zero(n);
  int inner = 0;
  for (int i = 0; i < N; ++i) {
    const Vector x = sample_uniform_ball(n, rho, eng);
    ASSERT_LE(x.norm(), rho);
    mean += x;
    inner += x.norm() <= rho / 2.0;
  }
  mean /= N;
  // Per-coordinate variance of the uniform ball is rho^2 / (n + 2).
  const double se = std::sqrt(rho * rho / (n + 2) / N);
  for (int k = 0; k < n; ++k) EXPECT_LT(std::abs(mean(k)), 4.0 * se);
  const double p = 1.0 / 8.0;
  EXPECT_NEAR(inner / double(N), p, 3.0 * std::sqrt(p * (1 - p) / N));
}

TEST(Packing, LowerBoundFormula) {
  EXPECT_EQ(packing_size_lower_bound(1, 0.25), 2u);
  EXPECT_EQ(packing_size_lower_bound(8, 0.25), 26u);
  EXPECT_EQ(packing_size_lower_bound(4, 0.25), 6u);
  EXPECT_EQ(packing_size_lower_bound(8, 0.30), 4u);
  EXPECT_EQ(packing_size_lower_bound(16, 0.30), 12u);
}

TEST(Packing, OneDimensionalInterval) {
  const auto cb = construct_greedy(1, 0.25, 1.0, 17, 100000);
  EXPECT_GE(cb.size(), 2u);
  EXPECT_LE(cb.size(), 4u);
  EXPECT_TRUE(certify_packing(cb).pass);
  EXPECT_TRUE(cb.saturated);
}

TEST(Packing, SaturationReachesTarget) {
  const double P = 10.0, eps = 0.25;
  const int n = 8;
  const auto cb = construct_greedy(n, eps * std::sqrt(n * P), P, 5, 100000);
  EXPECT_GE(cb.size(), 26u);
  const auto cert = certify_packing(cb);
  EXPECT_TRUE(cert.pass);
  EXPECT_NEAR(cert.min_dist, cb.min_pairwise_dist, 1e-12);
  EXPECT_LE(std::log2(double(cb.size())), log2_packing_count_upper(n, P, cb.r));
}

TEST(Packing, DeterministicForSeed) {
  const auto a = construct_greedy(5, 1.0, 2.0, 99, 5000);
  const auto b = construct_greedy(5, 1.0, 2.0, 99, 5000);
  EXPECT_EQ(a.codewords, b.codewords);
  const auto c = construct_greedy(5, 1.0, 2.0, 100, 5000);
  EXPECT_NE(a.codewords, c.codewords);
}

TEST(Packing, CapStopsEarly) {
  const auto cb = construct_greedy(6, 0.3, 1.0, 1, 100000, 10);
  EXPECT_EQ(cb.size(), 10u);
  EXPECT_FALSE(cb.saturated);
}

TEST(Packing, InvalidArguments) {
  EXPECT_EQ(code_of([] { construct_greedy(4, 1.0, 1.0, 1, 0); }), ErrorCode::BudgetZero);
  EXPECT_EQ(code_of([] { construct_greedy(4, 0.0, 1.0, 1, 10); }), ErrorCode::InvalidParameter);
  EXPECT_EQ(code_of([] { construct_greedy(4, 2.0, 1.0, 1, 10); }), ErrorCode::InvalidParameter);
}

TEST(Certificate, Examples) {
  // sqrt(nP) = sqrt(2 * 8) = 4, centres within 3.
  const auto ok = certify_packing(manual(2, {0, 0, 3, 0}, 1.0, 8.0));
  EXPECT_TRUE(ok.pass);
  EXPECT_DOUBLE_EQ(ok.min_dist, 3.0);

  const auto dup = certify_packing(manual(2, {1, 1, 1, 1}, 1.0, 8.0));
  EXPECT_FALSE(dup.pass);
  EXPECT_DOUBLE_EQ(dup.min_dist, 0.0);

  const auto single = certify_packing(manual(2, {0.5, 0.5}, 1.0, 8.0));
  EXPECT_TRUE(single.pass);
  EXPECT_EQ(single.min_dist, std::numeric_limits<double>::infinity());

  const auto far = certify_packing(manual(2, {3.5, 0}, 1.0, 8.0));
  EXPECT_FALSE(far.norm_ok);
}

TEST(Certificate, ScaleEquivariant) {
  auto cb = construct_greedy(4, 0.8, 2.0, 8, 4000);
  ASSERT_TRUE(certify_packing(cb).pass);
  for (double c : {0.01, 3.0, 1e4}) {
    Codebook s = cb;
    for (auto& v : s.codewords) v *= c;
    s.r *= c;
    s.P *= c * c;
    EXPECT_TRUE(certify_packing(s).pass) << c;
  }
}

TEST(LinearConstruction, SmallAwgnCode) {
  const auto ch = awgn(4, 20.0);
  const auto cache = spectral_cache(ch);
  ConstructionLimits lim;
  lim.budget = 20000;
  const auto code = construct_from_theorem3(ch, cache, 0.04, 0.5, 3, lim);
  const auto& cb = code.codebook;
  EXPECT_NEAR(cb.eps, std::sqrt(1.5 * 0.2 / 20.0), 1e-14);
  EXPECT_NEAR(cb.r, cb.eps * std::sqrt(80.0), 1e-12);
  EXPECT_GE(cb.size(), code.N_target);
  EXPECT_EQ(code.N_target, packing_size_lower_bound(4, cb.eps));
  EXPECT_TRUE(certify_packing(cb).pass);
  EXPECT_NEAR(code.decoder.threshold, 4.0 + 16.0 * 0.2, 1e-12);
  EXPECT_NEAR(code.E2_predicted, 2.0 * 0.25 * 0.04 / 21.0, 1e-15);
  EXPECT_FALSE(code.truncated);
}

TEST(LinearConstruction, HypothesisChecks) {
  const auto ch = awgn(4, 1.0);
  const auto cache = spectral_cache(ch);
  // eps^2 = 1.5 * 0.2 = 0.3 > 1/9.
  EXPECT_EQ(code_of([&] { construct_from_theorem3(ch, cache, 0.04, 0.5, 1); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { construct_from_theorem3(ch, cache, 0.0, 0.5, 1); }), ErrorCode::HypothesisViolated);
  EXPECT_EQ(code_of([&] { construct_from_theorem3(ch, cache, 0.04, 0.0, 1); }), ErrorCode::HypothesisViolated);
}

TEST(LinearConstruction, SizeCap) {
  const auto ch = awgn(16, 20.0);
  const auto cache = spectral_cache(ch);
  ConstructionLimits lim;
  lim.n_cap = 64;
  EXPECT_EQ(code_of([&] { construct_from_theorem3(ch, cache, 0.04, 0.5, 1, lim); }), ErrorCode::SizeCapExceeded);
  lim.allow_truncation = true;
  lim.budget = 1000;
  const auto code = construct_from_theorem3(ch, cache, 0.04, 0.5, 1, lim);
  EXPECT_TRUE(code.truncated);
  EXPECT_EQ(code.codebook.size(), 64u);
  EXPECT_TRUE(certify_packing(code.codebook).pass);
}

TEST(Packing, MatchesFullScanReference) {
  for (const auto& [n, eps] : std::vector<std::pair<int, double>>{{2, 0.1}, {3, 0.15}, {4, 0.12}, {6, 0.2}}) {
    const double P = 3.0;
    const double r = eps * std::sqrt(n * P);
    const std::uint64_t budget = 3000;
    const auto cb = construct_greedy(n, r, P, 21, budget);

    std::vector<double> ref;
    auto eng = rng::engine_for(21, rng::Stream::Codebook, 0);
    std::uint64_t rejections = 0;
    while (rejections < budget) {
      const Vector c = sample_uniform_ball(n, std::sqrt(n * P) - r, eng);
      bool hit = false;
      for (std::size_t i = 0; i < ref.size() && !hit; i += n) {
        double d = 0.0;
        for (int k = 0; k < n; ++k) d += (ref[i + k] - c(k)) * (ref[i + k] - c(k));
        hit = d <= 4.0 * r * r;
      }
      if (hit) {
        ++rejections;
      } else {
        ref.insert(ref.end(), c.data(), c.data() + n);
        rejections = 0;
      }
    }
    EXPECT_EQ(cb.codewords, ref) << "n=" << n;
  }
}
