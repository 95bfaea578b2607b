#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dicode/errors.hpp"
#include "dicode/rng.hpp"
#include "dicode/stats.hpp"

using namespace dicode;
using namespace dicode::stats;

TEST(Stats, NormalCdfKnownValues) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(-2.0), 0.022750131948179207, 1e-15);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-14);
  EXPECT_NEAR(normal_cdf(-8.0), 6.22096057427178e-16, 1e-28);
}

TEST(Stats, LogNormalCdfDeepTail) {
  EXPECT_NEAR(log_normal_cdf(-2.0), std::log(0.022750131948179207), 1e-13);
  // Continuity across the asymptotic switch.
  const double a = log_normal_cdf(-29.999);
  const double b = log_normal_cdf(-30.001);
  EXPECT_LT(b, a);
  EXPECT_NEAR(a - b, 30.0 * 0.002, 1e-3);
  EXPECT_TRUE(std::isfinite(log_normal_cdf(-1e4)));
}

TEST(Stats, QuantileInvertsCdf) {
  for (double p : {1e-12, 1e-6, 0.01, 0.3, 0.5, 0.9, 0.999999}) {
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12 * std::max(1.0, p / 1e-3));
  }
  EXPECT_THROW(normal_quantile(0.0), Error);
  EXPECT_THROW(normal_quantile(1.0), Error);
}

TEST(Rng, DerivedSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t c = 0; c < 1000; ++c) {
    seen.insert(rng::derive_seed(1, rng::Stream::Codebook, c));
    seen.insert(rng::derive_seed(1, rng::Stream::MissedIdentification, c));
    seen.insert(rng::derive_seed(2, rng::Stream::Codebook, c));
  }
  EXPECT_EQ(seen.size(), 3000u);
}

TEST(Rng, EngineDeterministic) {
  auto a = rng::engine_for(5, rng::Stream::Channel, 3);
  auto b = rng::engine_for(5, rng::Stream::Channel, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a(), b());
}
