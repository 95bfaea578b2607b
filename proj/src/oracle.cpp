#include "dicode/oracle.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "dicode/errors.hpp"

namespace dicode::oracle {
namespace {

constexpr double kBoxSd = 12.0;
constexpr double kAbsTol = 1e-9;
constexpr unsigned kMaxDepth = 18;

using GK = boost::math::quadrature::gauss_kronrod<double, 61>;

/// log N(y; mean, Sigma) for n in {1, 2}, from Sigma directly.
struct LogDensity {
  int n;
  std::array<double, 2> mean{};
  std::array<double, 3> inv{};  // (0,0), (0,1), (1,1) of Sigma^-1
  double log_norm = 0.0;

  LogDensity(const ChannelModel& ch, const Vector& x) : n(ch.n()) {
    const Vector m = ch.A() * x;
    const Matrix& S = ch.Sigma();
    if (n == 1) {
      mean[0] = m(0);
      inv[0] = 1.0 / S(0, 0);
      log_norm = -0.5 * std::log(2.0 * std::numbers::pi * S(0, 0));
    } else {
      mean = {m(0), m(1)};
      const double det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
      inv = {S(1, 1) / det, -S(0, 1) / det, S(0, 0) / det};
      log_norm = -std::log(2.0 * std::numbers::pi) - 0.5 * std::log(det);
    }
  }

  double operator()(double y0, double y1 = 0.0) const {
    const double d0 = y0 - mean[0];
    if (n == 1) return log_norm - 0.5 * inv[0] * d0 * d0;
    const double d1 = y1 - mean[1];
    return log_norm - 0.5 * (inv[0] * d0 * d0 + 2.0 * inv[1] * d0 * d1 + inv[2] * d1 * d1);
  }
};

struct Box {
  std::array<double, 2> lo{};
  std::array<double, 2> hi{};
};

// +-12 sd around every point in `centres` (the two means, and for Renyi the
// tilted centre), so truncated mass stays far below the tolerance.
Box make_box(const ChannelModel& ch, std::initializer_list<std::array<double, 2>> centres) {
  Box b;
  for (int k = 0; k < ch.n(); ++k) {
    const double sd = std::sqrt(ch.Sigma()(k, k));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& c : centres) {
      lo = std::min(lo, c[k]);
      hi = std::max(hi, c[k]);
    }
    b.lo[k] = lo - kBoxSd * sd;
    b.hi[k] = hi + kBoxSd * sd;
  }
  return b;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double v = GK::integrate(f, a, b, kMaxDepth, 1e-13, &err);
  if (!(err <= kAbsTol * std::max(1.0, std::abs(v))) || !std::isfinite(v)) {
    raise(ErrorCode::QuadratureNonConvergence, "1-D integral error estimate " + std::to_string(err));
  }
  return v;
}

/// Integrates f over the box. `kink(y0)` optionally returns a y1 location
/// where the inner integrand is not smooth; the inner range is split there.
double integrate_box(const ChannelModel& ch, const Box& box,
                     const std::function<double(double, double)>& f,
                     const std::function<double(double)>& kink = {}) {
  if (ch.n() == 1) {
    auto g = [&](double y) { return f(y, 0.0); };
    if (kink) {
      const double c = kink(0.0);
      if (c > box.lo[0] && c < box.hi[0]) return integrate_1d(g, box.lo[0], c) + integrate_1d(g, c, box.hi[0]);
    }
    return integrate_1d(g, box.lo[0], box.hi[0]);
  }
  auto inner = [&](double y0) {
    auto g = [&](double y1) { return f(y0, y1); };
    if (kink) {
      const double c = kink(y0);
      if (std::isfinite(c) && c > box.lo[1] && c < box.hi[1]) {
        return integrate_1d(g, box.lo[1], c) + integrate_1d(g, c, box.hi[1]);
      }
    }
    return integrate_1d(g, box.lo[1], box.hi[1]);
  };
  return integrate_1d(inner, box.lo[0], box.hi[0]);
}

void require_small(const ChannelModel& ch, const Vector& x, const Vector& x2) {
  if (ch.n() < 1 || ch.n() > 2) raise(ErrorCode::InvalidParameter, "quadrature oracles need n <= 2");
  if (x.size() != ch.n() || x2.size() != ch.n()) raise(ErrorCode::DimensionMismatch, "input length");
}

std::array<double, 2> means_of(const LogDensity& d) { return d.mean; }

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

double fidelity_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2) {
  require_small(ch, x, x2);
  const LogDensity p(ch, x), q(ch, x2);
  const Box box = make_box(ch, {means_of(p), means_of(q)});
  return integrate_box(ch, box, [&](double a, double b) { return std::exp(0.5 * (p(a, b) + q(a, b))); });
}

double renyi_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2, double alpha) {
  require_small(ch, x, x2);
  if (!(alpha > 0.0) || alpha == 1.0) raise(ErrorCode::InvalidAlpha, "alpha must lie in (0, inf) \\ {1}");
  const LogDensity p(ch, x), q(ch, x2);
  const std::array<double, 2> tilted{alpha * p.mean[0] + (1.0 - alpha) * q.mean[0],
                                     alpha * p.mean[1] + (1.0 - alpha) * q.mean[1]};
  const Box box = make_box(ch, {means_of(p), means_of(q), tilted});
  const double integral = integrate_box(
      ch, box, [&](double a, double b) { return std::exp(alpha * p(a, b) + (1.0 - alpha) * q(a, b)); });
  return std::log(integral) / (alpha - 1.0);
}

double tv_quadrature(const ChannelModel& ch, const Vector& x, const Vector& x2) {
  require_small(ch, x, x2);
  const LogDensity p(ch, x), q(ch, x2);
  const Box box = make_box(ch, {means_of(p), means_of(q)});
  // p = q on the affine set where the log-ratio vanishes; for fixed y0 that
  // is a single y1 (or a single y for n = 1).
  auto log_ratio = [&](double a, double b) { return p(a, b) - q(a, b); };
  auto kink = [&](double y0) {
    if (ch.n() == 1) {
      // Linear in y: root from two evaluations.
      const double f0 = log_ratio(0.0, 0.0), f1 = log_ratio(1.0, 0.0);
      return f1 == f0 ? std::numeric_limits<double>::quiet_NaN() : -f0 / (f1 - f0);
    }
    const double f0 = log_ratio(y0, 0.0), f1 = log_ratio(y0, 1.0);
    return f1 == f0 ? std::numeric_limits<double>::quiet_NaN() : -f0 / (f1 - f0);
  };
  return integrate_box(
      ch, box, [&](double a, double b) { return 0.5 * std::abs(std::exp(p(a, b)) - std::exp(q(a, b))); },
      kink);
}

double chi2_tail(int k, double t) {
  if (k < 1) raise(ErrorCode::InvalidParameter, "degrees of freedom must be >= 1");
  if (t <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * k, 0.5 * t);
}

double noncentral_chi2_cdf(int k, double ncp, double t) {
  if (k < 1) raise(ErrorCode::InvalidParameter, "degrees of freedom must be >= 1");
  if (ncp < 0.0) raise(ErrorCode::InvalidParameter, "noncentrality must be >= 0");
  if (t <= 0.0) return 0.0;
  if (ncp == 0.0) return boost::math::gamma_p(0.5 * k, 0.5 * t);
  const double mu = 0.5 * ncp;
  const double log_mu = std::log(mu);
  auto weight = [&](long j) { return std::exp(-mu + j * log_mu - std::lgamma(j + 1.0)); };
  auto term = [&](long j) { return boost::math::gamma_p(0.5 * k + j, 0.5 * t); };
  constexpr double kTail = 1e-15;
  constexpr long kMaxTerms = 10'000'000;

  // Sum outward from the Poisson mode; each term is at most its weight and
  // past the mode the weights fall off at least geometrically.
  const long mode = static_cast<long>(std::floor(mu));
  double sum = weight(mode) * term(mode);
  bool up_done = false, down_done = mode == 0;
  long up = mode, down = mode;
  for (long step = 0; step < kMaxTerms && !(up_done && down_done); ++step) {
    if (!up_done) {
      ++up;
      const double w = weight(up);
      sum += w * term(up);
      const double r = mu / (up + 1.0);
      up_done = r < 1.0 && w * r / (1.0 - r) < kTail;
    }
    if (!down_done) {
      --down;
      const double w = weight(down);
      sum += w * term(down);
      const double r = down / mu;
      down_done = down == 0 || (r < 1.0 && w * r / (1.0 - r) < kTail);
    }
  }
  if (up_done && down_done) return std::clamp(sum, 0.0, 1.0);
  raise(ErrorCode::SeriesNonConvergence, "Poisson mixture did not converge");
}

double dh_small_n_check(const ChannelModel& ch, const Vector& x, const Vector& x2, double eps) {
  if (ch.n() != 1) raise(ErrorCode::InvalidParameter, "dh_small_n_check needs n = 1");
  if (!(eps > 0.0 && eps < 1.0)) raise(ErrorCode::OutOfRange, "eps must lie in (0, 1)");
  const double a = ch.A()(0, 0);
  const double sd = std::sqrt(ch.Sigma()(0, 0));
  const double mp = a * x(0), mq = a * x2(0);

  // Lower test L = {y <= t}: p(L) = Phi((t-mp)/sd), q(L) = Phi((t-mq)/sd).
  // Upper test L = {y >= t}: complements. Feasible iff p(L) >= 1 - eps.
  struct Family {
    bool lower;
  };
  auto p_in = [&](Family f, double t) {
    const double c = std_normal_cdf((t - mp) / sd);
    return f.lower ? c : 1.0 - c;
  };
  auto q_in = [&](Family f, double t) {
    const double c = std_normal_cdf((t - mq) / sd);
    return f.lower ? c : 1.0 - c;
  };

  const double lo = std::min(mp, mq) - kBoxSd * sd;
  const double hi = std::max(mp, mq) + kBoxSd * sd;
  constexpr int kGrid = 20000;
  const double step = (hi - lo) / kGrid;
  double best = 1.0;
  for (Family f : {Family{true}, Family{false}}) {
    bool prev_feasible = false;
    for (int i = 0; i <= kGrid; ++i) {
      const double t = lo + i * step;
      const bool feasible = p_in(f, t) >= 1.0 - eps;
      if (feasible) best = std::min(best, q_in(f, t));
      if (i > 0 && feasible != prev_feasible) {
        // Bisect the constraint boundary between the two grid points.
        double a_t = t - step, b_t = t;  // a_t has feasibility prev_feasible
        for (int it = 0; it < 200; ++it) {
          const double m = 0.5 * (a_t + b_t);
          ((p_in(f, m) >= 1.0 - eps) == prev_feasible ? a_t : b_t) = m;
        }
        const double edge = prev_feasible ? a_t : b_t;
        best = std::min(best, q_in(f, edge));
      }
      prev_feasible = feasible;
    }
  }
  return -std::log(best);
}

}  // namespace dicode::oracle
