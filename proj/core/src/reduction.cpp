#include "q4/reduction.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "q4/errors.hpp"

namespace q4 {
namespace {

MomentIndex sym(int i, int j) { return {i, j, MomentForm::symmetric_form}; }
MomentIndex cub(int i, int j) { return {i, j, MomentForm::cubic_form}; }

Residual combine(std::initializer_list<double> terms) {
  Residual r;
  for (double t : terms) {
    r.value += t;
    r.scale = std::max(r.scale, std::abs(t));
  }
  return r;
}

}  // namespace

Residual recurrence_residual(RecurrenceKind kind, int i, int j, double h, const ModelParams& params,
                             Method method, double tol) {
  const double k = params.kappa;
  const std::array<MomentIndex, 5> idx{cub(i, j + 3), cub(i + 2, j + 1), cub(i + 3, j),
                                       cub(i, j + 1), cub(i, j)};
  const auto mv = moments(idx, h, params, method, tol);
  const double A = mv[0].value, B = mv[1].value, C = mv[2].value, D = mv[3].value, E = mv[4].value;
  switch (kind) {
    case RecurrenceKind::dx:
      return combine({k / 3.0 * (j + 4) * A, -(j + 2.0) * B, -h * (j + 1.0) * C,
                      -(k - 1.0) * (j + 2.0) * D, 2.0 / 3.0 * (k - 1.0) * (j + 1.0) * E});
    case RecurrenceKind::dy:
      return combine({k / 3.0 * (i + 1) * A, -(i + 3.0) * B, -h * (i + 4.0) * C,
                      -(k - 1.0) * (i + 1.0) * D, 2.0 / 3.0 * (k - 1.0) * (i + 1.0) * E});
    case RecurrenceKind::combined:
      return combine({k * (i + j + 5.0) * A, -(i + j + 5.0) * B, -(k - 1.0) * (i + 3.0 * j + 7.0) * D,
                      2.0 * (k - 1.0) * (j + 1.0) * E});
  }
  throw DomainError("recurrence_residual: unknown kind");
}

double MomentCombination::weight_at(std::size_t term, double h) const {
  double acc = 0.0;
  const auto& w = terms.at(term).h_weight;
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = acc * h + *it;
  return acc;
}

double MomentCombination::evaluate(double h, const ModelParams& params, Method method,
                                   double tol) const {
  std::vector<MomentIndex> idx;
  for (const auto& t : terms) idx.push_back(t.index);
  const auto mv = moments(idx, h, params, method, tol);
  double acc = 0.0;
  for (std::size_t q = 0; q < terms.size(); ++q) acc += weight_at(q, h) * mv[q].value;
  return acc;
}

MomentCombination moment_reduce(const MomentIndex& index, const ModelParams& params) {
  if (index.form != MomentForm::symmetric_form) {
    throw DomainError("moment_reduce: only symmetric-chart moments are reduced");
  }
  const double k = params.kappa;
  MomentCombination out;
  const auto i = index.i, j = index.j;
  if ((i == 1 && j == 2) || (i == 2 && j == 1)) {
    out.terms = {{{0.0, 0.3}, sym(0, 0)}, {{1.0}, sym(1, 0)}, {{0.2}, sym(0, 1)}};
  } else if (i == 3 && j == 0) {
    out.terms = {{{0.0, 3.0 * k / (10.0 * (k - 1.0))}, sym(0, 0)},
                 {{1.0}, sym(1, 0)},
                 {{k / (5.0 * (k - 1.0))}, sym(0, 1)}};
  } else if (i == 0 && j == 3) {
    out.terms = {{{0.0, 3.0 * (k + 1.0) / (10.0 * k)}, sym(0, 0)},
                 {{(k - 1.0) / k}, sym(1, 0)},
                 {{(k + 6.0) / (5.0 * k)}, sym(0, 1)}};
  } else if (i == -1 && j == 4) {
    // 6h/(5k) I_{-1,1} + 9/(5k^2) I_{-1,0} + 9(k-1)/(5k^2) I10 + (k-1)/k I12, I12 expanded.
    const double w = (k - 1.0) / k;
    out.terms = {{{0.0, 6.0 / (5.0 * k)}, sym(-1, 1)},
                 {{9.0 / (5.0 * k * k)}, sym(-1, 0)},
                 {{9.0 * (k - 1.0) / (5.0 * k * k) + w}, sym(1, 0)},
                 {{0.0, 0.3 * w}, sym(0, 0)},
                 {{0.2 * w}, sym(0, 1)}};
  } else {
    throw DomainError("moment_reduce: unsupported index (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
  }
  return out;
}

Residual inversion_check(int i, int j, double h, const ModelParams& params, Method method,
                         double tol) {
  const double lhs = moment(cub(i, j), h, params, method, tol).value;
  const double rhs = moment(sym(-i - j - 3, j), h, params, method, tol).value;
  return {lhs - rhs, std::max(std::abs(lhs), std::abs(rhs))};
}

namespace {

// symmetric-route weights -> basic weights, from the four reduction identities.
Eigen::Matrix4d symmetric_to_basic(double k) {
  Eigen::Matrix4d T;
  T << 3.0 * k / (10.0 * (k - 1.0)), 0.3, 3.0 * (k + 1.0) / (10.0 * k), 0.3 * k * (k - 1.0),
      1.0, 1.0, (k - 1.0) / k, 1.8 * (k - 1.0) + k * (k - 1.0),
      k / (5.0 * (k - 1.0)), 0.2, (k + 6.0) / (5.0 * k), 0.2 * k * (k - 1.0),
      0.0, 0.0, 0.0, 0.4;
  return T;
}

// cubic_shifted weights (integrand in y - 1) -> cubic weights, using I_{-6,2} = I_{-6,1}.
Eigen::Matrix4d shifted_to_cubic(double k) {
  const double k2 = k * k;
  Eigen::Matrix4d S;
  S << 1.0, -1.0, -1.0, k2,
      0.0, 1.0, 0.0, 2.0 * k2,
      0.0, 0.0, 1.0, -4.0 * k2,
      0.0, 0.0, 0.0, 1.0;
  return S;
}

}  // namespace

MuVector route_weights(Route route, double kappa, const MuVector& mu) {
  const Eigen::Vector4d m(mu[0], mu[1], mu[2], mu[3]);
  Eigen::Vector4d out = m;
  if (route != Route::basic) {
    out = symmetric_to_basic(kappa).partialPivLu().solve(m);
    if (route == Route::cubic_shifted) out = shifted_to_cubic(kappa).partialPivLu().solve(out);
  }
  return {out[0], out[1], out[2], out[3]};
}

double assemble_I(double h, const ModelParams& params, Route route, Method method, double tol) {
  const double k = params.kappa;
  const MuVector w = route_weights(route, k, params.mu);
  switch (route) {
    case Route::basic: {
      const std::array<MomentIndex, 5> idx{sym(0, 0), sym(1, 0), sym(0, 1), sym(-1, 0), sym(-1, 1)};
      const auto v = moments(idx, h, params, method, tol);
      return w[0] * h * v[0].value + w[1] * v[1].value + w[2] * v[2].value +
             w[3] * (2.0 * v[3].value + 3.0 * k * h * v[4].value);
    }
    case Route::symmetric: {
      const std::array<MomentIndex, 5> idx{sym(3, 0), sym(2, 1), sym(0, 3), sym(-1, 4), sym(-1, 0)};
      const auto v = moments(idx, h, params, method, tol);
      return w[0] * v[0].value + w[1] * v[1].value + w[2] * v[2].value +
             w[3] * (k * k * v[3].value - v[4].value);
    }
    case Route::cubic: {
      const std::array<MomentIndex, 5> idx{cub(-6, 0), cub(-6, 1), cub(-6, 3), cub(-6, 4), cub(-2, 0)};
      const auto v = moments(idx, h, params, method, tol);
      return w[0] * v[0].value + w[1] * v[1].value + w[2] * v[2].value +
             w[3] * (k * k * v[3].value - v[4].value);
    }
    case Route::cubic_shifted: {
      // x^{-6} [w1 + w2 (y-1) + w3 (y-1)^3 + w4 (k^2 (y-1)^4 - x^4)], binomially expanded.
      std::array<MomentIndex, 6> idx{cub(-6, 0), cub(-6, 1), cub(-6, 2), cub(-6, 3), cub(-6, 4), cub(-2, 0)};
      const auto v = moments(idx, h, params, method, tol);
      const double I0 = v[0].value, I1 = v[1].value, I2 = v[2].value, I3 = v[3].value,
                   I4 = v[4].value, Im2 = v[5].value;
      const double p1 = I1 - I0;
      const double p3 = I3 - 3.0 * I2 + 3.0 * I1 - I0;
      const double p4 = I4 - 4.0 * I3 + 6.0 * I2 - 4.0 * I1 + I0;
      return w[0] * I0 + w[1] * p1 + w[2] * p3 + w[3] * (k * k * p4 - Im2);
    }
  }
  throw DomainError("assemble_I: unknown route");
}

}  // namespace q4
