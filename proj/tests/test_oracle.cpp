#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dicode/divergences.hpp"
#include "dicode/errors.hpp"
#include "dicode/oracle.hpp"
#include "dicode/rng.hpp"

using namespace dicode;

namespace {

ChannelModel correlated() {
  Matrix A = Matrix::Identity(2, 2);
  Matrix S(2, 2);
  S << 2.0, 1.0, 1.0, 2.0;
  return validate_channel(2, A, S, 1.0);
}

ChannelModel scalar(double a, double s2) {
  Matrix A(1, 1), S(1, 1);
  A << a;
  S << s2;
  return validate_channel(1, A, S, 1.0);
}

}  // namespace

TEST(Quadrature, IdenticalInputs) {
  const auto ch = correlated();
  Vector x(2);
  x << 0.3, -0.7;
  EXPECT_NEAR(oracle::fidelity_quadrature(ch, x, x), 1.0, 1e-9);
  EXPECT_NEAR(oracle::renyi_quadrature(ch, x, x, 2.0), 0.0, 1e-9);
  EXPECT_NEAR(oracle::tv_quadrature(ch, x, x), 0.0, 1e-9);
}

TEST(Quadrature, CorrelatedNoiseMatchesClosedForm) {
  const auto ch = correlated();
  const auto c = spectral_cache(ch);
  rng::Xoshiro256pp eng(12);
  std::normal_distribution<double> g;
  for (int k = 0; k < 5; ++k) {
    Vector x(2), y(2);
    x << g(eng), g(eng);
    y << g(eng), g(eng);
    const auto geom = pair_geometry(x, y, c);
    const double fq = oracle::fidelity_quadrature(ch, x, y);
    EXPECT_NEAR(fq, fidelity(geom), 1e-6);
    EXPECT_NEAR(oracle::renyi_quadrature(ch, x, y, 0.5), -2.0 * std::log(fq), 1e-6);
    const double tv = oracle::tv_quadrature(ch, x, y);
    const auto s = tv_sandwich(fidelity(geom));
    EXPECT_GE(tv, s.lower - 1e-8);
    EXPECT_LE(tv, s.upper + 1e-8);
  }
}

TEST(Quadrature, RejectsLargeDimension) {
  PresetParams p;
  p.n = 3;
  const auto ch = preset(PresetKind::Awgn, p);
  const Vector x = Vector::Zero(3);
  EXPECT_THROW(oracle::fidelity_quadrature(ch, x, x), Error);
}

TEST(ChiSquare, Identities) {
  for (double t : {0.1, 1.0, 7.5, 30.0}) EXPECT_NEAR(oracle::chi2_tail(2, t), std::exp(-t / 2.0), 1e-14);
  for (int k : {1, 3, 10, 40})
    for (double t : {0.5, 5.0, 50.0})
      EXPECT_NEAR(oracle::noncentral_chi2_cdf(k, 0.0, t), 1.0 - oracle::chi2_tail(k, t), 1e-12);
  EXPECT_NEAR(oracle::chi2_tail(10, 20.0), 0.02925, 1e-5);
}

TEST(ChiSquare, NoncentralOneDimensionClosedForm) {
  // k = 1: P(|Z + mu| <= sqrt(t)).
  for (double mu : {0.5, 2.0, 6.0}) {
    for (double t : {0.25, 4.0, 30.0}) {
      const double s = std::sqrt(t);
      const double want = 0.5 * (std::erfc(-(s - mu) / std::sqrt(2.0)) - std::erfc(-(-s - mu) / std::sqrt(2.0)));
      EXPECT_NEAR(oracle::noncentral_chi2_cdf(1, mu * mu, t), want, 1e-10);
    }
  }
}

TEST(DhBruteForce, AgreesWithClosedForm) {
  rng::Xoshiro256pp eng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0), e(0.01, 0.9), s(0.3, 3.0);
  for (int k = 0; k < 20; ++k) {
    const auto ch = scalar(u(eng), s(eng));
    if (std::abs(ch.A()(0, 0)) < 0.05) continue;
    const auto c = spectral_cache(ch);
    Vector x(1), y(1);
    x << u(eng);
    y << u(eng);
    const double eps = e(eng);
    EXPECT_NEAR(oracle::dh_small_n_check(ch, x, y, eps), dh_exact(pair_geometry(x, y, c), eps), 1e-5);
  }
}

TEST(DhBruteForce, SymmetricAndMonotone) {
  const auto ch = scalar(1.0, 1.0);
  Vector x(1), y(1);
  x << 0.4;
  y << -0.3;
  EXPECT_NEAR(oracle::dh_small_n_check(ch, x, x, 0.5), std::log(2.0), 1e-6);
  double prev = 0.0;
  for (double eps : {0.01, 0.05, 0.2, 0.5, 0.8}) {
    const double v = oracle::dh_small_n_check(ch, x, y, eps);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}
