#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "dicode/bounds.hpp"
#include "dicode/decoder.hpp"
#include "dicode/errors.hpp"
#include "dicode/rng.hpp"

using namespace dicode;

TEST(Decoder, MakeDecoder) {
  PresetParams p;
  p.n = 32;
  const auto c = spectral_cache(preset(PresetKind::Awgn, p));
  const auto d = make_decoder(32, 0.04, c);
  EXPECT_NEAR(d.threshold, 57.6, 1e-12);
  EXPECT_EQ(d.regime, Regime::Sqrt);
  EXPECT_GT(d.threshold, c.trace_sigma);
  EXPECT_EQ(make_decoder(32, 2.0, c).regime, Regime::Linear);
}

TEST(Decoder, IdentifyBoundary) {
  Matrix A(2, 2);
  A << 1, 0, 0, 2;
  const std::vector<double> u{1.0, 1.0};
  DecoderSpec spec{25.0, 1.0, Regime::Sqrt};
  EXPECT_TRUE(identify(std::vector<double>{1.0, 2.0}, u, A, spec));
  // distance^2 = 3^2 + 4^2 = 25 exactly.
  EXPECT_TRUE(identify(std::vector<double>{4.0, 6.0}, u, A, spec));
  spec.threshold = std::nextafter(25.0, 0.0);
  EXPECT_FALSE(identify(std::vector<double>{4.0, 6.0}, u, A, spec));
  EXPECT_THROW(identify(std::vector<double>{1.0}, u, A, spec), Error);
}

TEST(Decoder, MonotoneInThreshold) {
  Matrix A = Matrix::Identity(3, 3);
  const std::vector<double> u{0, 0, 0}, y{1, 1, 1};
  for (double t : {1.0, 2.9, 3.0, 3.1, 10.0}) {
    DecoderSpec lo{t, 0.1, Regime::Sqrt}, hi{t * 1.5, 0.1, Regime::Sqrt};
    if (identify(y, u, A, lo)) EXPECT_TRUE(identify(y, u, A, hi));
  }
}

TEST(Decoder, PairwiseMargin) {
  Matrix A(2, 2);
  A << 1, 0, 0, 2;
  const std::vector<double> ui{0.5, 0.5}, uj{1.5, 1.5};
  const Vector d = pairwise_margin(ui, uj, A);
  EXPECT_DOUBLE_EQ(d(0), 1.0);
  EXPECT_DOUBLE_EQ(d(1), 2.0);
  EXPECT_DOUBLE_EQ(d.squaredNorm(), 5.0);
  EXPECT_EQ(pairwise_margin(ui, ui, A).norm(), 0.0);
  const Vector e = pairwise_margin(ui, uj, Matrix::Identity(2, 2));
  EXPECT_DOUBLE_EQ(e(0), 1.0);
  EXPECT_DOUBLE_EQ(e(1), 1.0);
}

TEST(Decoder, WhiteningIdentity) {
  Matrix A(3, 3), S(3, 3);
  A << 1, 0.2, 0, 0.1, 1, 0.3, 0, 0, 2;
  S << 1, 0.2, 0.1, 0.2, 1, 0.05, 0.1, 0.05, 1;
  const auto c = spectral_cache(validate_channel(3, A, S, 1.0));
  rng::Xoshiro256pp eng(4);
  std::normal_distribution<double> g;
  for (int k = 0; k < 10; ++k) {
    Vector y(3), u(3);
    for (int i = 0; i < 3; ++i) {
      y(i) = g(eng);
      u(i) = g(eng);
    }
    const Vector r = y - A * u;
    const Vector rotated = c.sigma_eigvecs.transpose() * r;
    EXPECT_NEAR(r.squaredNorm(), rotated.squaredNorm(), 1e-9 * r.squaredNorm());
  }
}
