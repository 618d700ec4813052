#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "q4lab/cli.hpp"

namespace q4::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: " + std::string(key) + " expects a number, got '" + s + "'");
  }
}

template <class Int>
Int to_int(std::string_view key, std::string_view v) {
  const std::string s = trim(v);
  Int x{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ConfigError("config: " + std::string(key) + " expects an integer, got '" + s + "'");
  }
  return x;
}

std::vector<std::string> split(std::string_view v) {
  std::vector<std::string> out;
  std::stringstream ss{std::string(v)};
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "kappa") {
    cfg.kappa_list.clear();
    for (const auto& s : split(value)) cfg.kappa_list.push_back(to_double(key, s));
  } else if (key == "mu") {
    const auto parts = split(value);
    if (parts.size() != 4) throw ConfigError("config: mu expects four comma-separated numbers");
    MuVector mu;
    for (int i = 0; i < 4; ++i) mu[i] = to_double(key, parts[i]);
    cfg.mu = mu;
    cfg.mu_mode = MuMode::explicit_mu;
  } else if (key == "mu_mode") {
    const std::string v = trim(value);
    if (v == "explicit") {
      cfg.mu_mode = MuMode::explicit_mu;
    } else if (v == "random_sphere") {
      cfg.mu_mode = MuMode::random_sphere;
    } else {
      throw ConfigError("config: mu_mode must be explicit or random_sphere");
    }
  } else if (key == "trials") {
    cfg.trials = to_int<int>(key, value);
  } else if (key == "seed") {
    cfg.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "tol") {
    cfg.tol = to_double(key, value);
  } else if (key == "grid") {
    cfg.grid = to_int<int>(key, value);
  } else if (key == "out") {
    cfg.output_dir = trim(value);
  } else if (key == "n") {
    cfg.n_list.clear();
    for (const auto& s : split(value)) cfg.n_list.push_back(to_int<int>(key, s));
  } else if (key == "epsilon") {
    cfg.epsilon = to_double(key, value);
  } else if (key == "periods") {
    cfg.periods = to_int<int>(key, value);
  } else {
    throw ConfigError("config: unknown key '" + std::string(key) + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: " + path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    apply_setting(cfg, trim(std::string_view(line).substr(0, eq)), std::string_view(line).substr(eq + 1));
  }
}

void validate(const RunConfig& cfg) {
  if (cfg.kappa_list.empty()) throw ConfigError("config: kappa list is empty");
  for (double k : cfg.kappa_list) {
    if (!(k > 1.0) || !std::isfinite(k)) throw ConfigError("config: every kappa must be finite and > 1");
  }
  if (cfg.trials < 1) throw ConfigError("config: trials must be >= 1");
  if (!(cfg.tol > 0.0)) throw ConfigError("config: tol must be > 0");
  if (cfg.grid < 64) throw ConfigError("config: grid must be >= 64");
  if (cfg.mu_mode == MuMode::explicit_mu && !cfg.mu) throw ConfigError("config: mu_mode=explicit needs mu");
  for (int n : cfg.n_list) {
    if (n < 1 || n > 4) throw ConfigError("config: n must lie in 1..4");
  }
  if (!(cfg.epsilon > 1e-4)) throw ConfigError("config: epsilon must exceed 1e-4");
  if (cfg.periods < 1) throw ConfigError("config: periods must be >= 1");
}

}  // namespace q4::cli
