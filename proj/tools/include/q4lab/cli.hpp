#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "q4/model.hpp"

namespace q4::cli {

enum class Command { verify, moments, zeros, cheb, winding, sweep, dyn, coeffs };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

enum class MuMode { explicit_mu, random_sphere };

struct RunConfig {
  std::vector<double> kappa_list{4.0};
  MuMode mu_mode = MuMode::random_sphere;
  std::optional<MuVector> mu;
  int trials = 100;
  std::uint64_t seed = 42;
  double tol = 1e-10;
  int grid = 200;
  std::filesystem::path output_dir = "q4lab-out";
  std::vector<int> n_list{1, 2, 3};  // winding: degrees of V_n
  double epsilon = 1e-3;             // winding: small-circle radius
  int periods = 10;                  // dyn: periods to integrate
};

/// Bad config file, key, value or flag.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Applies one key=value setting. Keys: kappa, mu, mu_mode, trials, seed, tol,
/// grid, out, n, epsilon, periods.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
/// Reads a key=value file ('#' starts a comment).
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);
/// ConfigError unless kappa > 1 everywhere, trials >= 1, tol > 0, grid >= 64.
void validate(const RunConfig& cfg);

/// Runs one command and writes its report into cfg.output_dir.
/// Returns 0 when every check passes, 2 when violations or findings are reported.
/// Execution errors propagate as exceptions.
int run(Command command, const RunConfig& cfg, std::ostream& log);

/// Full command line entry point; maps errors to exit code 1.
int main_entry(int argc, char** argv);

}  // namespace q4::cli
