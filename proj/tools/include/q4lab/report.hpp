#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace q4::cli {

/// CSV report with the fixed columns kappa, <level>, quantity, value, tolerance, status.
/// Numbers are written with 17 significant digits so reruns are byte-identical.
class Report {
 public:
  explicit Report(std::string level_column = "h") : level_column_(std::move(level_column)) {}

  /// Adds a row; returns whether it passed (|value| <= tolerance when `check` is omitted).
  bool add(double kappa, double level, const std::string& quantity, double value, double tolerance);
  bool add(double kappa, double level, const std::string& quantity, double value, double tolerance, bool pass);
  /// Informational row (always passes).
  void note(double kappa, double level, const std::string& quantity, double value);

  int failures() const { return failures_; }
  std::size_t rows() const { return rows_.size(); }
  void write(const std::filesystem::path& file) const;

 private:
  std::string level_column_;
  std::vector<std::string> rows_;
  int failures_ = 0;
};

std::string format_number(double x);

}  // namespace q4::cli
