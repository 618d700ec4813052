#include "q4/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace q4 {
namespace {

double polish(double a3, double a2, double a1, double a0, double x) {
  for (int it = 0; it < 4; ++it) {
    const double f = eval_cubic(a3, a2, a1, a0, x);
    const double df = (3.0 * a3 * x + 2.0 * a2) * x + a1;
    if (df == 0.0) break;
    const double next = x - f / df;
    if (std::abs(eval_cubic(a3, a2, a1, a0, next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

std::vector<CubicRoot> quadratic_roots(double a2, double a1, double a0, double merge_tol) {
  std::vector<CubicRoot> out;
  if (a2 == 0.0) {
    if (a1 != 0.0) out.push_back({-a0 / a1, 1});
    return out;
  }
  const double disc = a1 * a1 - 4.0 * a2 * a0;
  const double scale = std::max(a1 * a1, std::abs(4.0 * a2 * a0));
  if (std::abs(disc) <= merge_tol * scale) {
    out.push_back({-a1 / (2.0 * a2), 2});
    return out;
  }
  if (disc < 0.0) return out;
  // Stable pairing: avoid cancellation in -a1 +- sqrt(disc).
  const double q = -0.5 * (a1 + std::copysign(std::sqrt(disc), a1));
  double r1 = q / a2;
  double r2 = (q != 0.0) ? a0 / q : -r1;
  if (r1 > r2) std::swap(r1, r2);
  out.push_back({r1, 1});
  out.push_back({r2, 1});
  return out;
}

}  // namespace

std::vector<CubicRoot> real_roots_cubic(double a3, double a2, double a1, double a0,
                                        double merge_tol) {
  const double coef_scale = std::max({std::abs(a2), std::abs(a1), std::abs(a0)});
  if (a3 == 0.0 || std::abs(a3) < 1e-14 * coef_scale) {
    return quadratic_roots(a2, a1, a0, merge_tol);
  }
  const double b = a2 / a3, c = a1 / a3, d = a0 / a3;
  const double shift = b / 3.0;
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  const double scale = std::max(std::abs(4.0 * p * p * p), 27.0 * q * q);

  std::vector<CubicRoot> out;
  if (scale == 0.0) {
    out.push_back({-shift, 3});
    return out;
  }
  if (std::abs(disc) <= merge_tol * scale) {
    if (std::abs(p) <= std::sqrt(merge_tol) * std::max(1.0, std::abs(shift))) {
      out.push_back({-shift, 3});
      return out;
    }
    const double simple = 3.0 * q / p - shift;
    const double dbl = -1.5 * q / p - shift;
    out.push_back({polish(a3, a2, a1, a0, simple), 1});
    out.push_back({dbl, 2});
  } else if (disc > 0.0) {
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      const double t = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
      out.push_back({polish(a3, a2, a1, a0, t - shift), 1});
    }
  } else {
    const double root = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    const double big = -std::copysign(std::cbrt(std::abs(q) / 2.0 + root), q);
    const double small = (big != 0.0) ? -p / (3.0 * big) : 0.0;
    out.push_back({polish(a3, a2, a1, a0, big + small - shift), 1});
  }
  std::sort(out.begin(), out.end(),
            [](const CubicRoot& l, const CubicRoot& r) { return l.value < r.value; });
  return out;
}

}  // namespace q4
