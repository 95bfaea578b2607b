#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicode/cli/config.hpp"
#include "dicode/errors.hpp"

namespace dicode::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitInfeasible = 2,
  kExitNumerical = 3,
};

/// Maps a library error to the documented process exit code.
int exit_code_for(ErrorCode code) noexcept;

/// One results row; empty optionals print as empty CSV fields.
struct CsvRow {
  int n = 0;
  std::optional<double> E1_nats, E2_nats, tau, eps, r;
  std::optional<std::uint64_t> N;
  std::optional<double> log2_N, rate_bits, rate_per_log2n;
  std::optional<double> conv_thm1_bits, conv_thm2_bits, ach_thm3_bits;
  std::optional<double> lambda1_hat, lambda1_ci_high, lambda1_bound;
  std::optional<double> lambda2_hat, lambda2_ci_high, lambda2_bound;
  std::uint64_t seed = 0;
  std::string status;
};

std::string csv_header();
std::string format_row(const CsvRow& row);

/// Comment line, header and rows.
std::string to_csv(const ExperimentConfig& cfg, const std::vector<CsvRow>& rows);

/// Converse/achievability formulas over the (n, E1[, E2], tau) grid.
std::vector<CsvRow> bounds_rows(const ExperimentConfig& cfg);

/// Full pipeline per (n, E1, tau) cell: bounds always, construction and
/// simulation where the hypotheses and the size cap allow.
std::vector<CsvRow> sweep_rows(const ExperimentConfig& cfg, unsigned threads);

/// Plotting commands for a sweep CSV: rate vs E1 and normalized rate vs n.
std::string plot_script(const std::string& csv_file);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Oracle suite behind `dicode verify`.
std::vector<VerifyCheck> run_verification(std::uint64_t seed, unsigned threads);

/// Process entry point: `dicode <bounds|construct|simulate|sweep|verify> ...`.
int run(int argc, char** argv);

}  // namespace dicode::cli
