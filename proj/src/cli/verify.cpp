#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "dicode/cli/codebook_io.hpp"
#include "dicode/cli/commands.hpp"
#include "dicode/codebook.hpp"
#include "dicode/decoder.hpp"
#include "dicode/divergences.hpp"
#include "dicode/montecarlo.hpp"
#include "dicode/oracle.hpp"
#include "dicode/rng.hpp"
#include "dicode/simd.hpp"

namespace dicode::cli {
namespace {

bool close(double a, double b, double rel, double abs = 0.0) {
  return std::abs(a - b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

std::string pair_detail(double got, double want) {
  return "got " + format_double(got) + " want " + format_double(want);
}

ChannelModel correlated_2d() {
  Matrix A(2, 2);
  A << 1.2, 0.3, -0.4, 0.9;
  Matrix S(2, 2);
  S << 1.0, 0.35, 0.35, 0.7;
  return validate_channel(2, A, S, 2.0);
}

template <typename F>
void guarded(std::vector<VerifyCheck>& out, const std::string& name, F&& body) {
  try {
    out.push_back(body());
  } catch (const std::exception& e) {
    out.push_back({name, false, std::string("threw: ") + e.what()});
  }
}

}  // namespace

std::vector<VerifyCheck> run_verification(std::uint64_t seed, unsigned threads) {
  std::vector<VerifyCheck> out;
  const auto ch = correlated_2d();
  const auto cache = spectral_cache(ch);
  Vector x(2), x2(2);
  x << 0.8, -0.3;
  x2 << -0.2, 0.5;
  const auto geom = pair_geometry(x, x2, cache);

  guarded(out, "fidelity_quadrature", [&] {
    const double q = oracle::fidelity_quadrature(ch, x, x2);
    const double f = fidelity(geom);
    return VerifyCheck{"fidelity_quadrature", close(q, f, 1e-8), pair_detail(f, q)};
  });
  for (double alpha : {0.5, 2.0}) {
    const std::string name = "renyi_quadrature_alpha_" + format_double(alpha);
    guarded(out, name, [&] {
      const double q = oracle::renyi_quadrature(ch, x, x2, alpha);
      const double d = renyi(geom, alpha);
      return VerifyCheck{name, close(q, d, 1e-8), pair_detail(d, q)};
    });
  }
  guarded(out, "tv_sandwich", [&] {
    const double tv = oracle::tv_quadrature(ch, x, x2);
    const auto s = tv_sandwich(fidelity(geom));
    const bool ok = s.lower <= tv + 1e-9 && tv <= s.upper + 1e-9;
    std::ostringstream d;
    d << format_double(s.lower) << " <= " << format_double(tv) << " <= " << format_double(s.upper);
    return VerifyCheck{"tv_sandwich", ok, d.str()};
  });

  {
    Matrix A(1, 1), S(1, 1);
    A << 1.3;
    S << 0.8;
    const auto ch1 = validate_channel(1, A, S, 1.0);
    const auto c1 = spectral_cache(ch1);
    Vector a(1), b(1);
    a << 0.4;
    b << -0.7;
    const auto g1 = pair_geometry(a, b, c1);
    for (double eps : {0.05, 0.2}) {
      const std::string name = "dh_brute_force_eps_" + format_double(eps);
      guarded(out, name, [&] {
        const double brute = oracle::dh_small_n_check(ch1, a, b, eps);
        const double exact = dh_exact(g1, eps);
        return VerifyCheck{name, close(brute, exact, 1e-6, 1e-9), pair_detail(exact, brute)};
      });
    }
    guarded(out, "dh_renyi_bound", [&] {
      bool ok = true;
      double worst = -1e300;
      for (double eps : {0.01, 0.1, 0.3}) {
        for (double alpha : {1.1, 1.5, 2.0, 4.0}) {
          const double gap = dh_exact(geom, eps) - dh_renyi_upper_bound(geom, alpha, eps);
          worst = std::max(worst, gap);
          ok = ok && gap <= 1e-12;
        }
      }
      return VerifyCheck{"dh_renyi_bound", ok, "max(dh - bound) = " + format_double(worst)};
    });
  }

  guarded(out, "chi2_identities", [&] {
    bool ok = true;
    double worst = 0.0;
    for (int k : {1, 4, 16}) {
      for (double t : {0.5, 3.0, 20.0}) {
        const double a = oracle::chi2_tail(k, t);
        const double b = 1.0 - oracle::noncentral_chi2_cdf(k, 0.0, t);
        worst = std::max(worst, std::abs(a - b));
        ok = ok && std::abs(a - b) <= 1e-10;
      }
    }
    // k = 2 closed form: tail = exp(-t/2).
    const double c = oracle::chi2_tail(2, 3.0);
    ok = ok && close(c, std::exp(-1.5), 1e-12);
    return VerifyCheck{"chi2_identities", ok, "max abs diff " + format_double(worst)};
  });

  guarded(out, "lambda1_monte_carlo", [&] {
    const int n = 4;
    PresetParams p;
    p.n = n;
    p.P = 1.0;
    const auto awgn = preset(PresetKind::Awgn, p);
    const auto ac = spectral_cache(awgn);
    Codebook cb;
    cb.n = n;
    cb.codewords.assign(n, 0.0);
    cb.P = 1.0;
    cb.r = 0.1;
    cb.eps = cb.r / std::sqrt(n * cb.P);
    cb.min_pairwise_dist = std::numeric_limits<double>::infinity();
    DecoderSpec spec{6.0, 0.0, Regime::Sqrt};
    MonteCarloOptions opts;
    opts.threads = threads;
    const std::uint64_t trials = 20000;
    const auto est = estimate_lambda1(cb, spec, awgn, ac, trials, seed, opts);
    const double want = oracle::chi2_tail(n, 6.0);
    const double sd = std::sqrt(want * (1.0 - want) / static_cast<double>(trials));
    const bool ok = std::abs(est.p_hat - want) <= 4.0 * sd;
    return VerifyCheck{"lambda1_monte_carlo", ok, pair_detail(est.p_hat, want)};
  });

  guarded(out, "packing_certificate", [&] {
    const auto cb = construct_greedy(6, 0.6, 1.0, seed, 2000, 4096);
    const auto cert = certify_packing(cb);
    return VerifyCheck{"packing_certificate", cert.pass,
                       "N = " + std::to_string(cb.size()) + ", min dist " + format_double(cert.min_dist)};
  });

  guarded(out, "simd_equivalence", [&] {
    auto rng = rng::engine_for(seed, rng::Stream::Verify, 0);
    std::normal_distribution<double> g;
    const std::size_t dim = 37, rows = 50;
    std::vector<double> data(dim * rows), q(dim);
    for (auto& v : data) v = g(rng);
    for (auto& v : q) v = g(rng);
    const auto saved = simd::active_isa();
    simd::set_active_isa(simd::Isa::Scalar);
    const double d0 = simd::min_squared_distance(data, dim, q);
    const double p0 = simd::dot(q, std::span<const double>(data).first(dim));
    bool ok = true;
    std::string used = "scalar";
    for (auto isa : simd::available_isas()) {
      if (isa == simd::Isa::Scalar) continue;
      simd::set_active_isa(isa);
      used += std::string(",") + std::string(simd::isa_name(isa));
      ok = ok && close(simd::min_squared_distance(data, dim, q), d0, 1e-12) &&
           close(simd::dot(q, std::span<const double>(data).first(dim)), p0, 1e-12, 1e-12);
    }
    simd::set_active_isa(saved);
    return VerifyCheck{"simd_equivalence", ok, used};
  });

  return out;
}

}  // namespace dicode::cli
