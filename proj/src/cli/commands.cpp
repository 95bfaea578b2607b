#include "dicode/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "dicode/bounds.hpp"
#include "dicode/cli/codebook_io.hpp"
#include "dicode/codebook.hpp"
#include "dicode/errors.hpp"
#include "dicode/montecarlo.hpp"
#include "dicode/rng.hpp"

namespace dicode::cli {
namespace {

std::string field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string field(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string(); }

void append_status(std::string& status, const std::string& tag) {
  if (!status.empty()) status += ';';
  status += tag;
}

std::string join_notes(const std::vector<std::string>& notes) {
  std::string out;
  for (const auto& n : notes) append_status(out, n);
  return out;
}

/// Exponent list in nats with the declared value kept for the status column.
struct Exponent {
  double nats;
  double declared;
};

std::vector<Exponent> exponents(const std::optional<std::vector<double>>& list, ExponentBase base) {
  std::vector<Exponent> out;
  if (list) {
    for (double e : *list) out.push_back({to_nats(e, base), e});
  }
  return out;
}

std::string unit_note(const char* name, const Exponent& e, ExponentBase base) {
  if (base != ExponentBase::Bits) return {};
  return std::string(name) + "_bits=" + format_double(e.declared);
}

/// Fills eps, r and ach_thm3_bits from the linear construction when its
/// hypotheses hold; returns the achievability record when they do.
std::optional<LinearAchievability> fill_achievability(CsvRow& row, double E1, double tau, double nu_M,
                                                       double P) {
  try {
    const auto ach = achievable_rate_linear(E1, tau, nu_M, P);
    row.eps = ach.eps;
    row.r = ach.eps * std::sqrt(row.n * P);
    row.ach_thm3_bits = ach.rate_bits;
    if (ach.degenerate) append_status(row.status, "degenerate_rate");
    return ach;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::HypothesisViolated) throw;
    append_status(row.status, "thm3_hypothesis_violated");
    return std::nullopt;
  }
}

void fill_converse(CsvRow& row, const BoundReport& rep) {
  row.conv_thm1_bits = rep.R_conv_symmetric_bits;
  row.conv_thm2_bits = rep.R_conv_asymmetric_bits;
  const std::string notes = join_notes(rep.notes);
  if (!notes.empty()) append_status(row.status, notes);
}

/// R_ach must not exceed any applicable converse.
void check_converse_consistency(CsvRow& row) {
  if (!row.ach_thm3_bits) return;
  const double tol = 1e-12;
  if ((row.conv_thm1_bits && *row.ach_thm3_bits > *row.conv_thm1_bits + tol) ||
      (row.conv_thm2_bits && *row.ach_thm3_bits > *row.conv_thm2_bits + tol)) {
    append_status(row.status, "converse_violated");
  }
}

std::string certificate_text(const StoredCodebook& stored, const Theorem3Code& code,
                             const PackingCertificate& cert, const std::string& path) {
  const Codebook& cb = stored.codebook;
  const double cap = log2_packing_count_upper(cb.n, cb.P, cb.r);
  const double log2N = std::log2(static_cast<double>(cb.size()));
  std::ostringstream s;
  s << "codebook file:        " << path << "\n";
  s << "n:                    " << cb.n << "\n";
  s << "N:                    " << cb.size() << "\n";
  s << "P:                    " << format_double(cb.P) << "\n";
  s << "eps:                  " << format_double(cb.eps) << "\n";
  s << "r:                    " << format_double(cb.r) << "\n";
  s << "seed:                 " << cb.seed << "\n";
  s << "min pairwise dist:    " << format_double(cert.min_dist) << "  (must exceed 2r = "
    << format_double(cert.required_min_dist) << ")  " << (cert.distance_ok ? "PASS" : "FAIL") << "\n";
  s << "max codeword norm:    " << format_double(cert.max_norm) << "  (limit sqrt(nP) - r = "
    << format_double(cert.allowed_max_norm) << ")  " << (cert.norm_ok ? "PASS" : "FAIL") << "\n";
  s << "log2 N:               " << format_double(log2N) << "  (volumetric cap " << format_double(cap)
    << ")  " << (log2N <= cap ? "PASS" : "FAIL") << "\n";
  s << "size target:          " << code.N_target << "  (log2 " << format_double(code.log2_N_target)
    << ")  ";
  if (code.truncated) {
    s << "NOT CLAIMED (truncated at the codeword cap)\n";
  } else {
    s << (cb.size() >= code.N_target ? "MET" : "MISSED") << "\n";
  }
  s << "saturated:            " << (cb.saturated ? "yes" : "no") << "\n";
  s << "decoder threshold:    " << format_double(code.decoder.threshold) << "  (E1 = "
    << format_double(code.decoder.E1) << ")\n";
  s << "predicted E2:         " << format_double(code.E2_predicted) << "\n";
  return s.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << text;
}

std::uint64_t pair_trials(const ExperimentConfig& cfg) {
  return cfg.trials_per_pair.value_or(cfg.trials);
}

MonteCarloOptions mc_options(const ExperimentConfig& cfg, unsigned threads) {
  MonteCarloOptions o;
  o.threads = threads;
  o.nearest_k = cfg.nearest_k;
  return o;
}

/// Simulates both error types and fills the lambda columns and status.
void fill_simulation(CsvRow& row, const ExperimentConfig& cfg, const Codebook& cb,
                     const DecoderSpec& decoder, const ChannelModel& ch, const SpectralCache& cache,
                     std::optional<double> E2, std::uint64_t mc_seed, unsigned threads) {
  const auto opts = mc_options(cfg, threads);
  const auto l1 = estimate_lambda1(cb, decoder, ch, cache, cfg.trials, mc_seed, opts);
  row.lambda1_hat = l1.p_hat;
  row.lambda1_ci_high = l1.ci_high;
  row.lambda1_bound = lambda_from_exponent(decoder.E1, cb.n);
  bool ok = l1.within_bound(*row.lambda1_bound);
  if (cb.size() >= 2) {
    const auto l2 = estimate_lambda2(cb, decoder, ch, cache, pair_trials(cfg), cfg.pair_strategy,
                                     mc_seed, opts);
    row.lambda2_hat = l2.p_hat;
    row.lambda2_ci_high = l2.ci_high;
    if (l2.lower_bound_estimate) append_status(row.status, "lambda2_nearest_k");
    if (E2) {
      row.lambda2_bound = lambda_from_exponent(*E2, cb.n);
      ok = ok && l2.within_bound(*row.lambda2_bound);
    }
  }
  append_status(row.status, ok ? "bounds_pass" : "bounds_fail");
}

struct CommonOptions {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string codebook_path;
};

ExperimentConfig prepare(const CommonOptions& o) {
  ExperimentConfig cfg = load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out_dir.empty()) cfg.output.dir = o.out_dir;
  return cfg;
}

std::filesystem::path out_path(const ExperimentConfig& cfg, const std::string& name) {
  return std::filesystem::path(cfg.output.dir) / name;
}

int cmd_bounds(const CommonOptions& o) {
  const auto cfg = prepare(o);
  const auto path = out_path(cfg, cfg.output.csv);
  write_file(path, to_csv(cfg, bounds_rows(cfg)));
  std::cout << "wrote " << path.string() << "\n";
  return kExitOk;
}

int cmd_construct(const CommonOptions& o) {
  const auto cfg = prepare(o);
  if (!cfg.E1) raise(ErrorCode::ConfigError, "construct needs 'E1'");
  const auto e1s = exponents(cfg.E1, cfg.base);
  std::size_t cells = cfg.n.size() * e1s.size() * cfg.tau.size();
  std::size_t index = 0;
  for (int n : cfg.n) {
    const auto ch = build_channel(cfg.channel, n);
    const auto cache = spectral_cache(ch);
    for (const auto& e1 : e1s) {
      for (double tau : cfg.tau) {
        ConstructionLimits limits;
        limits.n_cap = cfg.n_cap;
        limits.allow_truncation = cfg.allow_truncation;
        const std::uint64_t seed = rng::derive_seed(cfg.seed, rng::Stream::Codebook, index);
        const auto code = construct_from_theorem3(ch, cache, e1.nats, tau, seed, limits);
        StoredCodebook stored{code.codebook, e1.nats, tau, code.truncated};
        const std::string suffix = cells == 1 ? "" : "_" + std::to_string(index);
        const auto stem = std::filesystem::path(cfg.output.codebook).stem().string();
        const auto ext = std::filesystem::path(cfg.output.codebook).extension().string();
        const auto cb_path = out_path(cfg, stem + suffix + ext);
        std::filesystem::create_directories(cb_path.parent_path());
        save_codebook(cb_path.string(), stored);
        const auto cert = certify_packing(stored.codebook);
        const auto cstem = std::filesystem::path(cfg.output.certificate).stem().string();
        const auto cext = std::filesystem::path(cfg.output.certificate).extension().string();
        const auto cert_path = out_path(cfg, cstem + suffix + cext);
        const std::string text = certificate_text(stored, code, cert, cb_path.string());
        write_file(cert_path, text);
        std::cout << text;
        if (!cert.pass) raise(ErrorCode::NumericalFailure, "constructed codebook failed certification");
        ++index;
      }
    }
  }
  return kExitOk;
}

int cmd_simulate(const CommonOptions& o) {
  const auto cfg = prepare(o);
  const std::string path =
      o.codebook_path.empty() ? out_path(cfg, cfg.output.codebook).string() : o.codebook_path;
  const auto stored = load_codebook(path);
  const Codebook& cb = stored.codebook;
  const auto ch = build_channel(cfg.channel, cb.n);
  if (std::abs(ch.P() - cb.P) > 1e-12 * cb.P) {
    raise(ErrorCode::ConfigError, "codebook P differs from the configured channel P");
  }
  const auto cache = spectral_cache(ch);
  double E1 = 0.0;
  if (stored.E1) {
    E1 = *stored.E1;
  } else if (cfg.E1) {
    E1 = to_nats(cfg.E1->front(), cfg.base);
  } else {
    raise(ErrorCode::ConfigError, "no E1 in the codebook file or the config");
  }
  const auto decoder = make_decoder(cb.n, E1, cache);

  CsvRow row;
  row.n = cb.n;
  row.E1_nats = E1;
  row.tau = stored.tau;
  row.eps = cb.eps;
  row.r = cb.r;
  row.N = cb.size();
  row.log2_N = std::log2(static_cast<double>(cb.size()));
  row.rate_bits = *row.log2_N / cb.n;
  if (cb.n >= 2) row.rate_per_log2n = *row.rate_bits / std::log2(cb.n);
  row.seed = cfg.seed;
  std::optional<double> E2;
  try {
    E2 = type2_exponent(cb.eps, E1, cache.nu_M, cb.P);
    row.E2_nats = E2;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Infeasible) throw;
    append_status(row.status, "type2_infeasible");
  }
  const auto cert = certify_packing(cb);
  if (!cert.pass) append_status(row.status, "certificate_failed");
  if (stored.truncated) append_status(row.status, "truncated");
  fill_simulation(row, cfg, cb, decoder, ch, cache, E2, cfg.seed, o.threads);

  const auto out = out_path(cfg, "simulate.csv");
  write_file(out, to_csv(cfg, {row}));
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const CommonOptions& o) {
  const auto cfg = prepare(o);
  const auto csv = out_path(cfg, cfg.output.csv);
  write_file(csv, to_csv(cfg, sweep_rows(cfg, o.threads)));
  const auto plot = out_path(cfg, cfg.output.plot);
  write_file(plot, plot_script(cfg.output.csv));
  std::cout << "wrote " << csv.string() << " and " << plot.string() << "\n";
  return kExitOk;
}

int cmd_verify(const CommonOptions& o) {
  std::uint64_t seed = o.seed.value_or(1);
  if (!o.config_path.empty()) seed = prepare(o).seed;
  const auto checks = run_verification(seed, o.threads);
  bool all = true;
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::cout << std::left;
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS  " : "FAIL  ") << c.name << std::string(width - c.name.size() + 2, ' ')
              << c.detail << "\n";
    all = all && c.pass;
  }
  std::cout << (all ? "all checks passed\n" : "some checks FAILED\n");
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::IoError:
    case ErrorCode::NonSymmetricCovariance:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::SingularTransform:
    case ErrorCode::NonPositivePower:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::InvalidParameter:
      return kExitConfig;
    case ErrorCode::HypothesisViolated:
    case ErrorCode::SizeCapExceeded:
    case ErrorCode::Infeasible:
    case ErrorCode::EpsOutOfRange:
    case ErrorCode::ExponentTooSmall:
    case ErrorCode::NonPositiveExponent:
      return kExitInfeasible;
    default:
      return kExitNumerical;
  }
}

std::string csv_header() {
  return "n,E1_nats,E2_nats,tau,eps,r,N,log2_N,rate_bits,rate_per_log2n,conv_thm1_bits,"
         "conv_thm2_bits,ach_thm3_bits,lambda1_hat,lambda1_ci_high,lambda1_bound,lambda2_hat,"
         "lambda2_ci_high,lambda2_bound,seed,status";
}

std::string format_row(const CsvRow& r) {
  std::string s = std::to_string(r.n);
  for (const auto& f : {field(r.E1_nats), field(r.E2_nats), field(r.tau), field(r.eps), field(r.r),
                        field(r.N), field(r.log2_N), field(r.rate_bits), field(r.rate_per_log2n),
                        field(r.conv_thm1_bits), field(r.conv_thm2_bits), field(r.ach_thm3_bits),
                        field(r.lambda1_hat), field(r.lambda1_ci_high), field(r.lambda1_bound),
                        field(r.lambda2_hat), field(r.lambda2_ci_high), field(r.lambda2_bound)}) {
    s += ',';
    s += f;
  }
  s += ',' + std::to_string(r.seed) + ',' + r.status;
  return s;
}

std::string to_csv(const ExperimentConfig& cfg, const std::vector<CsvRow>& rows) {
  std::string out = "# config_hash=" + config_hash(cfg) + " seed=" + std::to_string(cfg.seed) + "\n";
  out += csv_header() + "\n";
  for (const auto& r : rows) out += format_row(r) + "\n";
  return out;
}

std::vector<CsvRow> bounds_rows(const ExperimentConfig& cfg) {
  const auto e1s = exponents(cfg.E1, cfg.base);
  const auto e2s = exponents(cfg.E2, cfg.base);
  std::vector<CsvRow> rows;
  for (int n : cfg.n) {
    const auto ch = build_channel(cfg.channel, n);
    const auto cache = spectral_cache(ch);
    auto emit = [&](const Exponent* e1, const Exponent& e2, double tau) {
      CsvRow row;
      row.n = n;
      row.seed = cfg.seed;
      row.tau = tau;
      row.E2_nats = e2.nats;
      if (e1) {
        row.E1_nats = e1->nats;
        if (e1->nats > 0.0) fill_achievability(row, e1->nats, tau, cache.nu_M, ch.P());
      }
      fill_converse(row, bound_report(n, e1 ? e1->nats : 0.0, e2.nats, cache, ch.P()));
      check_converse_consistency(row);
      if (e1) {
        const auto note = unit_note("E1", *e1, cfg.base);
        if (!note.empty()) append_status(row.status, note);
      }
      if (cfg.E2) {
        const auto note = unit_note("E2", e2, cfg.base);
        if (!note.empty()) append_status(row.status, note);
      }
      if (row.status.empty()) row.status = "ok";
      rows.push_back(std::move(row));
    };
    if (!cfg.E2) {
      for (const auto& e1 : e1s) {
        for (double tau : cfg.tau) emit(&e1, e1, tau);
      }
    } else if (e1s.empty()) {
      for (const auto& e2 : e2s) {
        for (double tau : cfg.tau) emit(nullptr, e2, tau);
      }
    } else {
      for (const auto& e1 : e1s) {
        for (const auto& e2 : e2s) {
          for (double tau : cfg.tau) emit(&e1, e2, tau);
        }
      }
    }
  }
  return rows;
}

std::vector<CsvRow> sweep_rows(const ExperimentConfig& cfg, unsigned threads) {
  if (!cfg.E1) raise(ErrorCode::ConfigError, "sweep needs 'E1'");
  const auto e1s = exponents(cfg.E1, cfg.base);
  std::vector<CsvRow> rows;
  std::uint64_t cell = 0;
  for (int n : cfg.n) {
    const auto ch = build_channel(cfg.channel, n);
    const auto cache = spectral_cache(ch);
    for (const auto& e1 : e1s) {
      for (double tau : cfg.tau) {
        CsvRow row;
        row.n = n;
        row.seed = cfg.seed;
        row.tau = tau;
        row.E1_nats = e1.nats;
        const auto ach = e1.nats > 0.0 ? fill_achievability(row, e1.nats, tau, cache.nu_M, ch.P())
                                       : std::nullopt;
        if (ach) row.E2_nats = ach->E2;
        fill_converse(row, bound_report(n, e1.nats, ach ? ach->E2 : 0.0, cache, ch.P()));
        check_converse_consistency(row);

        if (ach && !ach->degenerate) {
          ConstructionLimits limits;
          limits.n_cap = cfg.n_cap;
          limits.allow_truncation = cfg.allow_truncation;
          const std::uint64_t cb_seed = rng::derive_seed(cfg.seed, rng::Stream::Codebook, cell);
          const std::uint64_t mc_seed = rng::derive_seed(cfg.seed, rng::Stream::Sweep, cell);
          try {
            const auto code = construct_from_theorem3(ch, cache, e1.nats, tau, cb_seed, limits);
            const Codebook& cb = code.codebook;
            row.N = cb.size();
            row.log2_N = std::log2(static_cast<double>(cb.size()));
            row.rate_bits = *row.log2_N / n;
            if (n >= 2) row.rate_per_log2n = *row.rate_bits / std::log2(n);
            if (code.truncated) append_status(row.status, "truncated");
            fill_simulation(row, cfg, cb, code.decoder, ch, cache, code.E2_predicted, mc_seed, threads);
          } catch (const Error& e) {
            if (e.code() == ErrorCode::SizeCapExceeded) {
              append_status(row.status, "size_cap");
            } else if (e.code() == ErrorCode::HypothesisViolated) {
              append_status(row.status, "construction_hypothesis_violated");
            } else {
              throw;
            }
          }
        }
        const auto note = unit_note("E1", e1, cfg.base);
        if (!note.empty()) append_status(row.status, note);
        if (row.status.empty()) row.status = "ok";
        rows.push_back(std::move(row));
        ++cell;
      }
    }
  }
  return rows;
}

std::string plot_script(const std::string& csv_file) {
  std::ostringstream s;
  s << "# Rate-reliability plots for " << csv_file << "\n"
    << "# Columns: 1 n, 2 E1_nats, 9 rate_bits, 10 rate_per_log2n, 11 conv_thm1_bits,\n"
    << "#          12 conv_thm2_bits, 13 ach_thm3_bits\n"
    << "set datafile separator \",\"\n"
    << "set datafile missing \"\"\n"
    << "set terminal pngcairo size 900,600\n"
    << "set key top right\n"
    << "set grid\n\n"
    << "set output \"rate_vs_E1.png\"\n"
    << "set logscale x\n"
    << "set xlabel \"E1 (nats per symbol)\"\n"
    << "set ylabel \"rate (bits per symbol)\"\n"
    << "plot \"" << csv_file << "\" skip 1 using 2:13 with points title \"achievable (distance decoding)\", \\\n"
    << "     \"\" skip 1 using 2:11 with points title \"converse, symmetric exponents\", \\\n"
    << "     \"\" skip 1 using 2:12 with points title \"converse, asymmetric regime\", \\\n"
    << "     \"\" skip 1 using 2:9 with points title \"constructed codebook\"\n\n"
    << "set output \"normalized_rate_vs_n.png\"\n"
    << "set logscale x 2\n"
    << "set xlabel \"block length n\"\n"
    << "set ylabel \"rate / log2(n)\"\n"
    << "plot \"" << csv_file << "\" skip 1 using 1:($13/(log($1)/log(2))) with points title \"achievable / log2 n\", \\\n"
    << "     \"\" skip 1 using 1:($11/(log($1)/log(2))) with points title \"converse (symmetric) / log2 n\", \\\n"
    << "     \"\" skip 1 using 1:10 with points title \"constructed / log2 n\"\n";
  return s.str();
}

int run(int argc, char** argv) {
  CLI::App app{"Deterministic identification codes over linear Gaussian channels"};
  app.require_subcommand(1);
  CommonOptions opts;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path, "JSON experiment config");
    if (config_required) c->required();
    sub->add_option("--out", opts.out_dir, "output directory (overrides the config)");
    sub->add_option("--seed", opts.seed, "master seed (overrides the config)");
    sub->add_option("--threads", opts.threads, "worker threads; never changes results")
        ->check(CLI::PositiveNumber);
  };
  auto* bounds = app.add_subcommand("bounds", "evaluate converse and achievability formulas");
  add_common(bounds, true);
  auto* construct = app.add_subcommand("construct", "build and certify a distance-decoding codebook");
  add_common(construct, true);
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo error estimates for a codebook file");
  add_common(simulate, true);
  simulate->add_option("--codebook", opts.codebook_path, "codebook file (default: <out>/<codebook>)");
  auto* sweep = app.add_subcommand("sweep", "full pipeline over the config grid, plus a plot script");
  add_common(sweep, true);
  auto* verify = app.add_subcommand("verify", "run the oracle suite and print a pass/fail table");
  add_common(verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*bounds) return cmd_bounds(opts);
    if (*construct) return cmd_construct(opts);
    if (*simulate) return cmd_simulate(opts);
    if (*sweep) return cmd_sweep(opts);
    if (*verify) return cmd_verify(opts);
  } catch (const Error& e) {
    std::cerr << "dicode: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "dicode: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}

}  // namespace dicode::cli
