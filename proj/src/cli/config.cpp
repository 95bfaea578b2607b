#include "dicode/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>

#include "dicode/errors.hpp"

namespace dicode::cli {
namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& what) { raise(ErrorCode::ConfigError, what); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

template <class T>
std::vector<T> scalar_or_list(const json& obj, const char* key) {
  const json& v = obj.at(key);
  try {
    if (v.is_array()) return v.get<std::vector<T>>();
    return {v.get<T>()};
  } catch (const json::exception& e) {
    config_error(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::vector<double>> matrix_field(const json& obj, const char* key) {
  if (!obj.contains(key)) config_error(std::string("explicit channel needs '") + key + "'");
  auto m = get_or<std::vector<std::vector<double>>>(obj, key, {});
  for (const auto& row : m) {
    if (row.size() != m.size()) config_error(std::string("'") + key + "' must be square");
  }
  return m;
}

constexpr std::pair<const char*, PresetKind> kKinds[] = {
    {"awgn", PresetKind::Awgn},
    {"scalar_fading", PresetKind::ScalarFading},
    {"diag_fading", PresetKind::DiagFading},
    {"toeplitz_isi", PresetKind::ToeplitzIsi},
    {"explicit", PresetKind::Explicit},
};

constexpr std::pair<const char*, PairStrategy> kStrategies[] = {
    {"all", PairStrategy::All},
    {"nearest_k", PairStrategy::NearestK},
    {"auto", PairStrategy::Auto},
};

ChannelSpec parse_channel(const json& c) {
  if (!c.is_object()) config_error("'channel' must be an object");
  ChannelSpec s;
  const auto kind = get_or<std::string>(c, "kind", "awgn");
  bool found = false;
  for (const auto& [name, k] : kKinds) {
    if (kind == name) {
      s.kind = k;
      found = true;
    }
  }
  if (!found) config_error("unknown channel kind '" + kind + "'");
  s.P = get_or<double>(c, "P", 1.0);
  s.sigma2 = get_or<double>(c, "sigma2", 1.0);
  s.gain = get_or<double>(c, "gain", 1.0);
  s.gains = get_or<std::vector<double>>(c, "gains", {});
  s.taps = get_or<std::vector<double>>(c, "taps", {});
  if (s.kind == PresetKind::DiagFading && s.gains.empty()) config_error("diag_fading needs 'gains'");
  if (s.kind == PresetKind::ToeplitzIsi && s.taps.empty()) config_error("toeplitz_isi needs 'taps'");
  if (s.kind == PresetKind::Explicit) {
    s.A = matrix_field(c, "A");
    s.Sigma = matrix_field(c, "Sigma");
  }
  return s;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) config_error("config must be a JSON object");
  ExperimentConfig cfg;
  if (!doc.contains("channel")) config_error("missing 'channel'");
  cfg.channel = parse_channel(doc.at("channel"));

  if (!doc.contains("n")) config_error("missing 'n'");
  cfg.n = scalar_or_list<int>(doc, "n");
  if (cfg.n.empty()) config_error("'n' must be nonempty");
  for (int n : cfg.n) {
    if (n < 1) config_error("'n' entries must be >= 1");
  }

  for (const char* key : {"E1", "E2"}) {
    if (doc.contains(key) && !doc.at(key).is_null()) {
      auto list = scalar_or_list<double>(doc, key);
      if (list.empty()) config_error(std::string("'") + key + "' must be nonempty when present");
      for (double e : list) {
        if (!(e >= 0.0)) config_error(std::string("'") + key + "' entries must be >= 0");
      }
      (key[1] == '1' ? cfg.E1 : cfg.E2) = std::move(list);
    }
  }
  if (!cfg.E1 && !cfg.E2) config_error("at least one of 'E1' and 'E2' is required");

  const auto base = get_or<std::string>(doc, "exponent_base", "nats");
  if (base == "nats") {
    cfg.base = ExponentBase::Nats;
  } else if (base == "bits") {
    cfg.base = ExponentBase::Bits;
  } else {
    config_error("'exponent_base' must be \"nats\" or \"bits\"");
  }

  if (doc.contains("tau")) cfg.tau = scalar_or_list<double>(doc, "tau");
  if (cfg.tau.empty()) config_error("'tau' must be nonempty");
  cfg.trials = get_or<std::uint64_t>(doc, "trials", cfg.trials);
  if (cfg.trials == 0) config_error("'trials' must be >= 1");
  if (doc.contains("trials_per_pair") && !doc.at("trials_per_pair").is_null()) {
    cfg.trials_per_pair = get_or<std::uint64_t>(doc, "trials_per_pair", 1);
    if (*cfg.trials_per_pair == 0) config_error("'trials_per_pair' must be >= 1");
  }
  cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);

  const auto strategy = get_or<std::string>(doc, "pair_strategy", "auto");
  bool found = false;
  for (const auto& [name, s] : kStrategies) {
    if (strategy == name) {
      cfg.pair_strategy = s;
      found = true;
    }
  }
  if (!found) config_error("unknown pair_strategy '" + strategy + "'");
  cfg.nearest_k = get_or<std::size_t>(doc, "nearest_k", cfg.nearest_k);
  if (cfg.nearest_k == 0) config_error("'nearest_k' must be >= 1");
  cfg.n_cap = get_or<std::size_t>(doc, "n_cap", cfg.n_cap);
  if (cfg.n_cap == 0) config_error("'n_cap' must be >= 1");
  cfg.allow_truncation = get_or<bool>(doc, "allow_truncation", false);

  if (doc.contains("output")) {
    const json& o = doc.at("output");
    if (!o.is_object()) config_error("'output' must be an object");
    cfg.output.dir = get_or<std::string>(o, "dir", cfg.output.dir);
    cfg.output.csv = get_or<std::string>(o, "csv", cfg.output.csv);
    cfg.output.plot = get_or<std::string>(o, "plot", cfg.output.plot);
    cfg.output.codebook = get_or<std::string>(o, "codebook", cfg.output.codebook);
    cfg.output.certificate = get_or<std::string>(o, "certificate", cfg.output.certificate);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config '" + path + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    config_error("'" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json ch;
  for (const auto& [name, k] : kKinds) {
    if (k == cfg.channel.kind) ch["kind"] = name;
  }
  ch["P"] = cfg.channel.P;
  ch["sigma2"] = cfg.channel.sigma2;
  switch (cfg.channel.kind) {
    case PresetKind::ScalarFading: ch["gain"] = cfg.channel.gain; break;
    case PresetKind::DiagFading: ch["gains"] = cfg.channel.gains; break;
    case PresetKind::ToeplitzIsi: ch["taps"] = cfg.channel.taps; break;
    case PresetKind::Explicit:
      ch["A"] = cfg.channel.A;
      ch["Sigma"] = cfg.channel.Sigma;
      ch.erase("sigma2");
      break;
    case PresetKind::Awgn: break;
  }
  json doc;
  doc["channel"] = ch;
  doc["n"] = cfg.n;
  doc["E1"] = cfg.E1 ? json(*cfg.E1) : json(nullptr);
  if (cfg.E2) doc["E2"] = *cfg.E2;
  doc["exponent_base"] = cfg.base == ExponentBase::Bits ? "bits" : "nats";
  doc["tau"] = cfg.tau;
  doc["trials"] = cfg.trials;
  if (cfg.trials_per_pair) doc["trials_per_pair"] = *cfg.trials_per_pair;
  doc["seed"] = cfg.seed;
  for (const auto& [name, s] : kStrategies) {
    if (s == cfg.pair_strategy) doc["pair_strategy"] = name;
  }
  doc["nearest_k"] = cfg.nearest_k;
  doc["n_cap"] = cfg.n_cap;
  doc["allow_truncation"] = cfg.allow_truncation;
  doc["output"] = {{"dir", cfg.output.dir},
                   {"csv", cfg.output.csv},
                   {"plot", cfg.output.plot},
                   {"codebook", cfg.output.codebook},
                   {"certificate", cfg.output.certificate}};
  return doc;
}

std::string config_hash(const ExperimentConfig& cfg) {
  auto doc = to_json(cfg);
  doc.erase("output");
  const std::string canonical = doc.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double to_nats(double E, ExponentBase base) {
  return base == ExponentBase::Bits ? E * std::numbers::ln2 : E;
}

ChannelModel build_channel(const ChannelSpec& spec, int n) {
  PresetParams p;
  p.n = n;
  p.P = spec.P;
  p.sigma2 = spec.sigma2;
  p.gain = spec.gain;
  p.gains = spec.gains;
  p.taps = spec.taps;
  if (spec.kind == PresetKind::Explicit) {
    p.A = to_matrix(spec.A);
    p.Sigma = to_matrix(spec.Sigma);
  }
  if ((spec.kind == PresetKind::Explicit && static_cast<int>(spec.A.size()) != n) ||
      (spec.kind == PresetKind::DiagFading && static_cast<int>(spec.gains.size()) != n)) {
    config_error("channel dimension does not match n = " + std::to_string(n));
  }
  return preset(spec.kind, p);
}

}  // namespace dicode::cli
