#include "q4/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "q4/errors.hpp"

namespace q4 {
namespace {

constexpr std::size_t kMaxNodes = std::size_t{1} << 20;
constexpr double kMinX = 1e-6;

double ipow(double x, int n) {
  if (n >= 0) {
    double r = 1.0;
    for (int k = 0; k < n; ++k) r *= x;
    return r;
  }
  return 1.0 / ipow(x, -n);
}

// Accumulates nested trapezoid sums for several integrands at once and
// doubles the node count until every sum has settled.
template <class Sample>
std::vector<MomentValue> refine(std::span<const MomentIndex> indices, double h, Method method,
                                double tol, double period, bool skip_endpoints, Sample&& sample) {
  const std::size_t m = indices.size();
  std::vector<double> sum(m, 0.0), values(m, 0.0);
  std::vector<double> buf(m);

  std::size_t n = 32;
  // Nodes k * period / n for k = 0..n-1 (periodic) or k = 1..n-1 (endpoint-free).
  for (std::size_t k = skip_endpoints ? 1 : 0; k < n; ++k) {
    sample(period * static_cast<double>(k) / n, buf);
    for (std::size_t q = 0; q < m; ++q) sum[q] += buf[q];
  }
  for (std::size_t q = 0; q < m; ++q) values[q] = sum[q] * period / n;

  for (;;) {
    if (n >= kMaxNodes) throw NonconvergenceError("moment: refinement stalled before tolerance");
    for (std::size_t k = 1; k < 2 * n; k += 2) {
      sample(period * static_cast<double>(k) / (2 * n), buf);
      for (std::size_t q = 0; q < m; ++q) sum[q] += buf[q];
    }
    n *= 2;
    bool done = n >= 128;
    std::vector<MomentValue> out(m);
    for (std::size_t q = 0; q < m; ++q) {
      const double next = sum[q] * period / n;
      const double diff = std::abs(next - values[q]);
      if (diff > tol * std::max(std::abs(next), 1e-300)) done = false;
      out[q] = {indices[q], h, next, method, diff, n};
      values[q] = next;
    }
    if (done) return out;
  }
}

std::vector<MomentValue> green_moments(const CubicLevel& level, std::span<const MomentIndex> indices,
                                       double h, double tol) {
  bool needs_positive_x = false;
  for (const auto& idx : indices) {
    if (idx.i == -1 && idx.j == -1) throw DomainError("moment: index (-1,-1) is not supported");
    if (idx.i < 0) needs_positive_x = true;
  }
  return refine(indices, h, Method::green, tol, 2.0 * std::numbers::pi, false,
                [&](double theta, std::vector<double>& out) {
                  const RayPoint rp = ray_point(level, theta);
                  const double x = rp.p.x, y = rp.p.y;
                  if (needs_positive_x && !(x > kMinX)) {
                    throw GeometryError("moment: negative power of x too close to x = 0");
                  }
                  for (std::size_t q = 0; q < indices.size(); ++q) {
                    const int i = indices[q].i, j = indices[q].j;
                    if (i != -1) {
                      out[q] = ipow(x, i + 1) * ipow(y, j) / (i + 1) * rp.dp.y;
                    } else {
                      out[q] = -ipow(x, i) * ipow(y, j + 1) / (j + 1) * rp.dp.x;
                    }
                  }
                });
}

// The slice of the region at abscissa x: the pair of roots of the depressed
// cubic a y^3 + B y + C bounding F < 0. Computed from the isolated root and
// Vieta so the gap stays accurate next to the vertical tangents.
struct Slice {
  bool valid = false;
  double lo = 0.0, hi = 0.0, gap = 0.0;
};

Slice slice_at(const CubicLevel& level, double x) {
  const double A = level.a;
  const double B = level.b2 * x * x + level.b0;
  const double C = level.c3 * x * x * x + level.c0;
  const auto roots = real_roots_cubic(A, 0.0, B, C, 0.0);
  if (roots.size() < 3) return {};
  // F < 0 on the middle-upper gap when A > 0, on the lower-middle gap when A < 0.
  const bool upper = A > 0.0;
  const double iso = upper ? roots[0].value : roots[2].value;
  if (iso == 0.0) return {};
  const double sum = -iso;
  const double prod = -C / (A * iso);
  const double gap = std::sqrt(std::max(0.0, sum * sum - 4.0 * prod));
  Slice s;
  s.valid = true;
  s.lo = 0.5 * (sum - gap);
  s.hi = 0.5 * (sum + gap);
  s.gap = gap;
  return s;
}

double slice_discriminant(const CubicLevel& level, double x) {
  const double A = level.a;
  const double B = level.b2 * x * x + level.b0;
  const double C = level.c3 * x * x * x + level.c0;
  return -4.0 * A * B * B * B - 27.0 * A * A * C * C;
}

// First sign change of the slice discriminant walking from the interior point.
double slice_edge(const CubicLevel& level, double direction) {
  const double x0 = level.interior.x;
  if (!(slice_discriminant(level, x0) > 0.0)) {
    throw GeometryError("moment: vertical line through the interior point misses the oval");
  }
  double inside = x0;
  double step = 1e-6;
  double outside = x0 + direction * step;
  while (slice_discriminant(level, outside) > 0.0) {
    inside = outside;
    step *= 2.0;
    outside = x0 + direction * step;
    if (step > 1e6) throw GeometryError("moment: region is unbounded in x");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    (slice_discriminant(level, mid) > 0.0 ? inside : outside) = mid;
  }
  return 0.5 * (inside + outside);
}

std::vector<MomentValue> area_moments(const CubicLevel& level, std::span<const MomentIndex> indices,
                                      double h, double tol) {
  for (const auto& idx : indices) {
    if (idx.j < 0) throw DomainError("moment: area2d needs j >= 0");
  }
  const double xa = slice_edge(level, -1.0);
  const double xb = slice_edge(level, +1.0);
  bool needs_positive_x = false;
  for (const auto& idx : indices) needs_positive_x = needs_positive_x || idx.i < 0;
  if (needs_positive_x && !(xa > kMinX)) {
    throw GeometryError("moment: negative power of x too close to x = 0");
  }
  const double half = 0.5 * (xb - xa);
  return refine(indices, h, Method::area2d, tol, std::numbers::pi, true,
                [&](double theta, std::vector<double>& out) {
                  const double x = xa + half * (1.0 - std::cos(theta));
                  const double jac = half * std::sin(theta);
                  const Slice s = slice_at(level, x);
                  for (std::size_t q = 0; q < indices.size(); ++q) {
                    if (!s.valid) {
                      out[q] = 0.0;
                      continue;
                    }
                    const int i = indices[q].i, j = indices[q].j;
                    // (hi^{j+1} - lo^{j+1}) / (j+1) = gap * sum_m hi^{j-m} lo^m / (j+1)
                    double acc = 0.0;
                    for (int mm = 0; mm <= j; ++mm) acc += ipow(s.hi, j - mm) * ipow(s.lo, mm);
                    out[q] = ipow(x, i) * s.gap * acc / (j + 1) * jac;
                  }
                });
}

void require_interior(double h, const ModelParams& m) {
  const auto lp = level_classify(h, m);
  if (lp.window == Window::center_end || lp.window == Window::saddle_end) {
    throw DegenerateLevelError("moment: level " + std::to_string(h) + " is a critical value");
  }
  if (lp.window != Window::interior) {
    throw DomainError("moment: level " + std::to_string(h) + " is outside the period annulus");
  }
}

}  // namespace

std::vector<MomentValue> moments_over(const CubicLevel& level, std::span<const MomentIndex> indices,
                                      double h, Method method, double tol) {
  if (!(tol > 0.0)) throw DomainError("moment: tol must be positive");
  if (indices.empty()) return {};
  return method == Method::green ? green_moments(level, indices, h, tol)
                                 : area_moments(level, indices, h, tol);
}

std::vector<MomentValue> moments(std::span<const MomentIndex> indices, double h,
                                 const ModelParams& params, Method method, double tol) {
  require_interior(h, params);
  if (indices.empty()) return {};
  const MomentForm form = indices.front().form;
  for (const auto& idx : indices) {
    if (idx.form != form) throw DomainError("moments: mixed forms in one batch");
  }
  const CubicLevel level = form == MomentForm::symmetric_form
                               ? CubicLevel::symmetric(h, params.kappa)
                               : CubicLevel::cubic(h, params.kappa);
  return moments_over(level, indices, h, method, tol);
}

MomentValue moment(const MomentIndex& index, double h, const ModelParams& params, Method method,
                   double tol) {
  return moments(std::span<const MomentIndex>(&index, 1), h, params, method, tol).front();
}

double residue_value(double h, double y, const ModelParams& params) {
  const double k = params.kappa;
  const double residual = k / 3.0 * y * y * y - y - h;
  if (std::abs(residual) > 1e-8 * std::max({1.0, std::abs(h), std::abs(y * y * y)})) {
    throw DomainError("residue_value: y is not a root of kappa y^3/3 - y = h");
  }
  const double den = k * y * y - 1.0;
  if (std::abs(den) <= 1e-14) throw PoleError("residue_value: kappa y^2 = 1");
  return (-4.0 * h + (3.0 * k * h * h - 4.0) * y) / den;
}

double curve_discriminant(double h, const ModelParams& params) {
  const double k = params.kappa;
  const double at_infinity = 4.0 / 3.0 * k * (k - 1.0) * (k - 1.0);
  return at_infinity * (h * h - 4.0 / 9.0) * (h * h - 4.0 / (9.0 * k));
}

}  // namespace q4
