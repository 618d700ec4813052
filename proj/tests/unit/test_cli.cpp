#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "q4lab/cli.hpp"
#include "q4lab/report.hpp"

namespace q4::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "q4lab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

TEST(Commands, ParseRoundTrip) {
  for (const char* name : {"verify", "moments", "zeros", "cheb", "winding", "sweep", "dyn", "coeffs"}) {
    const auto c = parse_command(name);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(to_string(*c), name);
  }
  EXPECT_FALSE(parse_command("bogus").has_value());
}

TEST(Config, FileAndOverrides) {
  const fs::path file = fs::temp_directory_path() / "q4lab_test.cfg";
  {
    std::ofstream out(file);
    out << "# comment\nkappa = 2, 4\nmu = 1,0,0,0\ntrials=7\nseed=9\n";
  }
  RunConfig cfg;
  load_config_file(cfg, file);
  EXPECT_EQ(cfg.kappa_list, (std::vector<double>{2.0, 4.0}));
  EXPECT_EQ(cfg.mu_mode, MuMode::explicit_mu);
  EXPECT_EQ(cfg.trials, 7);
  EXPECT_EQ(cfg.seed, 9u);
  apply_setting(cfg, "trials", "3");
  EXPECT_EQ(cfg.trials, 3);
  EXPECT_THROW(apply_setting(cfg, "nonsense", "1"), ConfigError);
  EXPECT_THROW(apply_setting(cfg, "mu", "1,2"), ConfigError);
}

TEST(Config, ValidateRejectsBadValues) {
  RunConfig cfg;
  cfg.kappa_list = {1.0};
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg.kappa_list = {4.0};
  cfg.grid = 10;
  EXPECT_THROW(validate(cfg), ConfigError);
}

TEST(Report, RowFormat) {
  Report r;
  r.add(4.0, -0.5, "x", 1e-12, 1e-10);
  r.add(4.0, -0.5, "y", 1.0, 0.5);
  EXPECT_EQ(r.failures(), 1);
  const fs::path out = fs::temp_directory_path() / "q4lab_report.csv";
  r.write(out);
  const std::string s = slurp(out);
  EXPECT_EQ(s.substr(0, s.find('\n')), "kappa,h,quantity,value,tolerance,status");
  EXPECT_NE(s.find(",pass\n"), std::string::npos);
  EXPECT_NE(s.find(",flag\n"), std::string::npos);
}

TEST(Main, ExitCodes) {
  const fs::path dir = fs::temp_directory_path() / "q4lab_cli_exit";
  EXPECT_EQ(invoke({"coeffs", "--out", dir.string()}), 0);
  EXPECT_TRUE(fs::exists(dir / "coeffs.txt"));
  EXPECT_EQ(invoke({"bogus"}), 1);
  EXPECT_EQ(invoke({"verify", "--kappa", "0.5", "--out", dir.string()}), 1);
  EXPECT_EQ(invoke({"verify", "--config", "/nonexistent.cfg"}), 1);
  EXPECT_EQ(invoke({"cheb", "--kappa", "4", "--out", dir.string()}), 2);
  EXPECT_TRUE(fs::exists(dir / "cheb.csv"));
}

TEST(Main, SweepIsDeterministic) {
  const fs::path a = fs::temp_directory_path() / "q4lab_det_a";
  const fs::path b = fs::temp_directory_path() / "q4lab_det_b";
  for (const auto& d : {a, b}) {
    EXPECT_EQ(invoke({"sweep", "--kappa", "2", "--trials", "10", "--seed", "5", "--out", d.string()}), 0);
  }
  EXPECT_EQ(slurp(a / "sweep.csv"), slurp(b / "sweep.csv"));
  const fs::path c = fs::temp_directory_path() / "q4lab_det_c";
  EXPECT_EQ(invoke({"sweep", "--kappa", "2", "--trials", "10", "--seed", "6", "--out", c.string()}), 0);
  EXPECT_NE(slurp(a / "sweep.csv"), slurp(c / "sweep.csv"));
}

TEST(Main, ZerosWithExplicitMu) {
  const fs::path dir = fs::temp_directory_path() / "q4lab_zeros";
  EXPECT_EQ(invoke({"zeros", "--kappa", "4", "--mu", "0,1,0,0", "--out", dir.string()}), 0);
  const std::string s = slurp(dir / "zeros.csv");
  EXPECT_NE(s.find("count_G,0,"), std::string::npos);
}

}  // namespace
}  // namespace q4::cli
