#include "q4/zeros.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "q4/errors.hpp"

namespace q4 {

std::vector<double> chebyshev_grid(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int k = 1; k <= n; ++k) x[k - 1] = mid - half * std::cos(std::numbers::pi * k / (n + 1));
  return x;
}

namespace {

double bracket_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                    double tol) {
  std::uintmax_t iters = 200;
  const auto stop = [tol](double l, double r) { return std::abs(r - l) <= tol; };
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

ZeroReport count_zeros_on_grid(const std::function<double(double)>& f, std::pair<double, double> interval,
                               const std::vector<double>& v, double tol) {
  const int n = static_cast<int>(v.size());
  if (n < 64) throw DomainError("count_zeros: grid must have at least 64 points");
  if (!(interval.first < interval.second)) throw DomainError("count_zeros: empty interval");
  const auto x = chebyshev_grid(interval.first, interval.second, n);
  ZeroReport rep;
  rep.interval = interval;
  rep.grid_size = n;
  for (double y : v) {
    if (!std::isfinite(y)) throw DomainError("count_zeros: function value is not finite");
    rep.scale = std::max(rep.scale, std::abs(y));
  }
  if (rep.scale == 0.0) {
    rep.warnings.push_back("function vanishes identically on the grid; no isolated zeros counted");
    return rep;
  }
  const auto sgn = [](double y) { return (y > 0.0) - (y < 0.0); };
  const double xtol = tol * std::max(1.0, std::abs(interval.second - interval.first));

  for (int k = 0; k < n; ++k) {
    const int sk = sgn(v[k]);
    if (sk == 0) {
      const int sl = k > 0 ? sgn(v[k - 1]) : 0, sr = k + 1 < n ? sgn(v[k + 1]) : 0;
      const bool even = sl != 0 && sl == sr;
      rep.zeros.push_back({x[k], even ? 2 : 1, even});
      continue;
    }
    if (k + 1 < n) {
      const int sn = sgn(v[k + 1]);
      if (sk * sn < 0) {
        rep.zeros.push_back({bracket_root(f, x[k], x[k + 1], v[k], v[k + 1], xtol), 1, false});
        rep.refined = true;
      }
    }
    // Touching minimum of |f| between equal-sign neighbours.
    if (k > 0 && k + 1 < n) {
      const int sl = sgn(v[k - 1]), sr = sgn(v[k + 1]);
      if (sl == sk && sr == sk && std::abs(v[k]) <= std::abs(v[k - 1]) && std::abs(v[k]) <= std::abs(v[k + 1]) &&
          std::abs(v[k]) < 0.05 * rep.scale) {
        const double s = sk;
        std::uintmax_t iters = 200;
        const auto m = boost::math::tools::brent_find_minima([&](double t) { return s * f(t); }, x[k - 1],
                                                             x[k + 1], 50, iters);
        const double xm = m.first, fm = s * m.second;
        rep.refined = true;
        if (sgn(fm) == -sk) {
          rep.zeros.push_back({bracket_root(f, x[k - 1], xm, v[k - 1], fm, xtol), 1, false});
          rep.zeros.push_back({bracket_root(f, xm, x[k + 1], fm, v[k + 1], xtol), 1, false});
        } else if (std::abs(fm) <= tol * rep.scale) {
          rep.zeros.push_back({xm, 2, true});
        }
      }
    }
  }
  std::sort(rep.zeros.begin(), rep.zeros.end(), [](const Zero& a, const Zero& b) { return a.location < b.location; });
  for (std::size_t q = 1; q < rep.zeros.size(); ++q) {
    if (rep.zeros[q].location - rep.zeros[q - 1].location < xtol) {
      rep.warnings.push_back("unresolved cluster near " + std::to_string(rep.zeros[q].location));
    }
  }
  for (const auto& z : rep.zeros) rep.count += z.multiplicity_estimate;
  return rep;
}

ZeroReport count_zeros(const std::function<double(double)>& f, std::pair<double, double> interval, int grid,
                       double tol) {
  if (grid < 64) throw DomainError("count_zeros: grid must have at least 64 points");
  const auto x = chebyshev_grid(interval.first, interval.second, grid);
  std::vector<double> v(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) v[k] = f(x[k]);
  return count_zeros_on_grid(f, interval, v, tol);
}

}  // namespace q4
