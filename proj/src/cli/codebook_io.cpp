#include "dicode/cli/codebook_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "dicode/errors.hpp"

namespace dicode::cli {
namespace {

constexpr const char* kMagic = "dicode-codebook";

[[noreturn]] void bad(const std::string& what) { raise(ErrorCode::IoError, "codebook: " + what); }

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    bad("cannot parse number '" + s + "'");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_codebook(std::ostream& out, const StoredCodebook& stored) {
  const Codebook& cb = stored.codebook;
  out << kMagic << " 1\n";
  out << "n " << cb.n << "\n";
  out << "N " << cb.size() << "\n";
  out << "r " << format_double(cb.r) << "\n";
  out << "P " << format_double(cb.P) << "\n";
  out << "seed " << cb.seed << "\n";
  out << "eps " << format_double(cb.eps) << "\n";
  out << "min_pairwise_dist " << format_double(cb.min_pairwise_dist) << "\n";
  out << "saturated " << (cb.saturated ? 1 : 0) << "\n";
  if (stored.E1) out << "E1 " << format_double(*stored.E1) << "\n";
  if (stored.tau) out << "tau " << format_double(*stored.tau) << "\n";
  out << "truncated " << (stored.truncated ? 1 : 0) << "\n";
  out << "data\n";
  const auto n = static_cast<std::size_t>(cb.n);
  for (std::size_t i = 0; i < cb.size(); ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      out << (k ? " " : "") << format_double(cb.codewords[i * n + k]);
    }
    out << "\n";
  }
}

StoredCodebook read_codebook(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != std::string(kMagic) + " 1") bad("missing header line");
  std::map<std::string, std::string> header;
  while (std::getline(in, line) && line != "data") {
    std::istringstream ss(line);
    std::string key, value;
    if (!(ss >> key >> value)) bad("malformed header line '" + line + "'");
    header[key] = value;
  }
  if (line != "data") bad("missing 'data' marker");
  for (const char* key : {"n", "N", "r", "P", "seed"}) {
    if (!header.count(key)) bad(std::string("missing header key '") + key + "'");
  }

  StoredCodebook stored;
  Codebook& cb = stored.codebook;
  cb.n = std::stoi(header["n"]);
  const auto N = std::stoull(header["N"]);
  cb.r = parse_double(header["r"]);
  cb.P = parse_double(header["P"]);
  cb.seed = std::stoull(header["seed"]);
  if (cb.n < 1 || N < 1) bad("n and N must be >= 1");
  cb.eps = header.count("eps") ? parse_double(header["eps"]) : cb.r / std::sqrt(cb.n * cb.P);
  cb.saturated = header.count("saturated") && header["saturated"] == "1";
  if (header.count("E1")) stored.E1 = parse_double(header["E1"]);
  if (header.count("tau")) stored.tau = parse_double(header["tau"]);
  stored.truncated = header.count("truncated") && header["truncated"] == "1";

  const auto count = static_cast<std::size_t>(N) * static_cast<std::size_t>(cb.n);
  cb.codewords.reserve(count);
  std::string tok;
  while (cb.codewords.size() < count && in >> tok) cb.codewords.push_back(parse_double(tok));
  if (cb.codewords.size() != count) bad("payload has fewer than N*n numbers");
  if (in >> tok) bad("trailing data after payload");
  cb.min_pairwise_dist = header.count("min_pairwise_dist")
                             ? parse_double(header["min_pairwise_dist"])
                             : std::numeric_limits<double>::infinity();
  return stored;
}

void save_codebook(const std::string& path, const StoredCodebook& stored) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot write '" + path + "'");
  write_codebook(out, stored);
}

StoredCodebook load_codebook(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open '" + path + "'");
  return read_codebook(in);
}

}  // namespace dicode::cli
