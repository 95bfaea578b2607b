#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dicode/divergences.hpp"
#include "dicode/errors.hpp"
#include "dicode/rng.hpp"
#include "dicode/stats.hpp"

using namespace dicode;
using namespace dicode::stats;

namespace {

SpectralCache awgn_cache(int n, double sigma2 = 1.0) {
  PresetParams p;
  p.n = n;
  p.sigma2 = sigma2;
  return spectral_cache(preset(PresetKind::Awgn, p));
}

PairGeometry geometry_with_mah(double mah_sq) {
  const auto c = awgn_cache(1);
  Vector a(1), b(1);
  a << std::sqrt(mah_sq);
  b << 0.0;
  return pair_geometry(a, b, c);
}

}  // namespace

TEST(Divergences, FidelityAndRenyiClosedForm) {
  const auto c = awgn_cache(2, 2.0);
  Vector a(2), b(2);
  a << 1.0, 2.0;
  b << -1.0, 0.0;
  const auto g = pair_geometry(a, b, c);
  EXPECT_NEAR(g.mah_sq, 4.0, 1e-14);
  EXPECT_NEAR(g.euc_sq, 8.0, 1e-14);
  EXPECT_NEAR(fidelity(g), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(log_fidelity(g), -0.5, 1e-15);
  EXPECT_NEAR(renyi(g, 2.0), 4.0, 1e-14);
  EXPECT_NEAR(renyi(g, 0.5), -2.0 * log_fidelity(g), 1e-14);
  EXPECT_THROW(renyi(g, 1.0), Error);
  EXPECT_THROW(renyi(g, -1.0), Error);
}

TEST(Divergences, FidelityUnderflowLogDomain) {
  const auto g = geometry_with_mah(1e5);
  EXPECT_EQ(fidelity(g), 0.0);
  EXPECT_NEAR(log_fidelity(g), -1.25e4, 1e-8);
}

TEST(Divergences, FidelityMultipliesOverBlocks) {
  Matrix A = Matrix::Zero(3, 3), S = Matrix::Zero(3, 3);
  A.topLeftCorner(2, 2) << 1.0, 0.3, 0.2, 1.5;
  A(2, 2) = 0.7;
  S.topLeftCorner(2, 2) << 1.0, 0.4, 0.4, 2.0;
  S(2, 2) = 0.5;
  const auto full = spectral_cache(validate_channel(3, A, S, 1.0));
  const auto b1 = spectral_cache(validate_channel(2, A.topLeftCorner(2, 2), S.topLeftCorner(2, 2), 1.0));
  const auto b2 = spectral_cache(validate_channel(1, A.bottomRightCorner(1, 1), S.bottomRightCorner(1, 1), 1.0));
  Vector x(3), y(3);
  x << 0.3, -1.0, 2.0;
  y << 1.0, 0.5, -0.5;
  const double whole = pair_geometry(x, y, full).mah_sq;
  const double parts = pair_geometry(x.head(2), y.head(2), b1).mah_sq + pair_geometry(x.tail(1), y.tail(1), b2).mah_sq;
  EXPECT_NEAR(whole, parts, 1e-12 * whole);
}

TEST(Divergences, TvSandwich) {
  const auto s = tv_sandwich(0.6);
  EXPECT_DOUBLE_EQ(s.lower, 0.4);
  EXPECT_DOUBLE_EQ(s.upper, 0.8);
  EXPECT_THROW(tv_sandwich(1.5), Error);
  EXPECT_THROW(tv_sandwich(-0.1), Error);
}

TEST(Divergences, DhExactExamples) {
  EXPECT_NEAR(dh_exact(geometry_with_mah(0.0), 0.5), std::log(2.0), 1e-12);
  EXPECT_NEAR(dh_exact(geometry_with_mah(4.0), 0.5), -std::log(normal_cdf(-2.0)), 1e-9);
  EXPECT_NEAR(dh_exact(geometry_with_mah(4.0), 0.5), -std::log(0.5 * std::erfc(std::sqrt(2.0))), 1e-12);
  EXPECT_NEAR(dh_exact(geometry_with_mah(4.0), 0.5), 3.7831843, 1e-7);
  EXPECT_THROW(dh_exact(geometry_with_mah(1.0), 0.0), Error);
  EXPECT_THROW(dh_exact(geometry_with_mah(1.0), 1.0), Error);
}

TEST(Divergences, DhMonotoneInEps) {
  const auto g = geometry_with_mah(2.5);
  double prev = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double v = dh_exact(g, k / 200.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Divergences, DhBelowRenyiChain) {
  rng::Xoshiro256pp eng(2024);
  std::normal_distribution<double> gauss;
  const auto c = awgn_cache(2, 0.7);
  for (int pair = 0; pair < 20; ++pair) {
    Vector a(2), b(2);
    a << gauss(eng), gauss(eng);
    b << gauss(eng), gauss(eng);
    const auto g = pair_geometry(a, b, c);
    for (double alpha : {1.5, 2.0, 4.0, 10.0}) {
      for (double eps : {0.01, 0.1, 0.5}) {
        EXPECT_LE(dh_exact(g, eps), dh_renyi_upper_bound(g, alpha, eps) + 1e-9);
        EXPECT_NEAR(dh_renyi_upper_bound(g, alpha, eps),
                    renyi(g, alpha) + alpha / (alpha - 1.0) * std::log(1.0 / (1.0 - eps)), 1e-12);
      }
    }
  }
}
