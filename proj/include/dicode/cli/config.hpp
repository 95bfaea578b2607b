#pragma once
// JSON experiment configuration shared by all subcommands.
//
// {
//   "channel": {"kind": "awgn", "sigma2": 1.0, "P": 10.0},
//   "n": [8, 16],
//   "E1": [0.01, 0.04],          // omit or null: Stein regime (bounds only)
//   "E2": [0.5],                 // optional; omitted means E2 = E1
//   "exponent_base": "nats",     // or "bits": converted by ln 2 on load
//   "tau": [0.5],                // number or list
//   "trials": 10000,             // per message for missed identification
//   "trials_per_pair": 2000,     // optional, defaults to trials
//   "seed": 1,
//   "pair_strategy": "auto",     // all | nearest_k | auto
//   "nearest_k": 8,
//   "n_cap": 1048576,
//   "allow_truncation": false,
//   "output": {"dir": "out", "csv": "results.csv", "plot": "sweep.gp",
//              "codebook": "codebook.txt", "certificate": "certificate.txt"}
// }
//
// Channel kinds: awgn {sigma2}, scalar_fading {gain, sigma2},
// diag_fading {gains, sigma2}, toeplitz_isi {taps, sigma2},
// explicit {A, Sigma} with row-major nested arrays. Every kind takes P.

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dicode/channel.hpp"
#include "dicode/montecarlo.hpp"

namespace dicode::cli {

enum class ExponentBase { Nats, Bits };

struct ChannelSpec {
  PresetKind kind = PresetKind::Awgn;
  double P = 1.0;
  double sigma2 = 1.0;
  double gain = 1.0;
  std::vector<double> gains;
  std::vector<double> taps;
  std::vector<std::vector<double>> A;
  std::vector<std::vector<double>> Sigma;
};

struct OutputSpec {
  std::string dir = "out";
  std::string csv = "results.csv";
  std::string plot = "sweep.gp";
  std::string codebook = "codebook.txt";
  std::string certificate = "certificate.txt";
};

struct ExperimentConfig {
  ChannelSpec channel;
  std::vector<int> n;
  std::optional<std::vector<double>> E1;  // as declared (see base)
  std::optional<std::vector<double>> E2;
  ExponentBase base = ExponentBase::Nats;
  std::vector<double> tau{0.5};
  std::uint64_t trials = 10000;
  std::optional<std::uint64_t> trials_per_pair;
  std::uint64_t seed = 1;
  PairStrategy pair_strategy = PairStrategy::Auto;
  std::size_t nearest_k = 8;
  std::size_t n_cap = std::size_t{1} << 20;
  bool allow_truncation = false;
  OutputSpec output;
};

/// Throws Error(ConfigError) naming the offending field.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// FNV-1a of the canonical JSON form without the output block, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

/// Declared exponent converted to nats.
double to_nats(double E, ExponentBase base);

/// Validated channel for block length n (explicit channels must match n).
ChannelModel build_channel(const ChannelSpec& spec, int n);

}  // namespace dicode::cli
