#include "q4lab/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace q4::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", x);
}

bool Report::add(double kappa, double level, const std::string& quantity, double value, double tolerance) {
  return add(kappa, level, quantity, value, tolerance, std::abs(value) <= tolerance);
}

bool Report::add(double kappa, double level, const std::string& quantity, double value, double tolerance,
                 bool pass) {
  rows_.push_back(fmt::format("{},{},{},{},{},{}", format_number(kappa), format_number(level), quantity,
                              format_number(value), format_number(tolerance), pass ? "pass" : "flag"));
  if (!pass) ++failures_;
  return pass;
}

void Report::note(double kappa, double level, const std::string& quantity, double value) {
  add(kappa, level, quantity, value, INFINITY, true);
}

void Report::write(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "kappa," << level_column_ << ",quantity,value,tolerance,status\n";
  for (const auto& r : rows_) out << r << '\n';
}

}  // namespace q4::cli
