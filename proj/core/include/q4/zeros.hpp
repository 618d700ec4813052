#pragma once

// Zero counting of real functions on an open interval.

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace q4 {

struct Zero {
  double location = 0.0;
  int multiplicity_estimate = 1;
  bool tangency = false;  // even multiplicity inferred from a touching minimum of |f|
};

struct ZeroReport {
  std::pair<double, double> interval;
  std::vector<Zero> zeros;
  int count = 0;  // sum of multiplicity estimates
  int grid_size = 0;
  bool refined = false;
  double scale = 0.0;  // max |f| on the grid
  std::vector<std::string> warnings;
};

/// Interior Chebyshev-Lobatto points a + (b-a)(1 - cos(pi k/(n+1)))/2, k = 1..n.
std::vector<double> chebyshev_grid(double a, double b, int n);

/// Scans f on chebyshev_grid(a, b, grid), brackets sign changes and refines
/// them to tol (an identically vanishing f yields no zeros and a warning); a local minimum of |f| without a sign change is refined and
/// counted as two simple zeros if f crosses, as a double zero if
/// |f| <= tol * scale there, and dropped otherwise. DomainError if grid < 64.
ZeroReport count_zeros(const std::function<double(double)>& f, std::pair<double, double> interval,
                       int grid = 200, double tol = 1e-10);

/// Same, reusing precomputed grid values (values[k] = f(chebyshev_grid(...)[k])).
ZeroReport count_zeros_on_grid(const std::function<double(double)>& f, std::pair<double, double> interval,
                               const std::vector<double>& values, double tol = 1e-10);

}  // namespace q4
