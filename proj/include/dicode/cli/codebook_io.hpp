#pragma once
// Text codebook format, one key per line, then the row-major payload:
//
//   dicode-codebook 1
//   n 16
//   N 1024
//   r 2.1908902300206643
//   P 20
//   seed 7
//   eps 0.1224744871391589
//   min_pairwise_dist 4.50123
//   saturated 0
//   E1 0.04                 (optional: decoder exponent)
//   tau 0.5                 (optional)
//   truncated 1             (optional)
//   data
//   <N lines of n numbers>
//
// Numbers are written in shortest round-trip form, so a reload is exact.

#include <iosfwd>
#include <optional>
#include <string>

#include "dicode/codebook.hpp"

namespace dicode::cli {

struct StoredCodebook {
  Codebook codebook;
  std::optional<double> E1;
  std::optional<double> tau;
  bool truncated = false;
};

void write_codebook(std::ostream& out, const StoredCodebook& stored);
StoredCodebook read_codebook(std::istream& in);

void save_codebook(const std::string& path, const StoredCodebook& stored);
StoredCodebook load_codebook(const std::string& path);

/// Shortest decimal that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace dicode::cli
