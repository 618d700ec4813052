#include "q4/melnikov.hpp"

#include <cmath>
#include <sstream>

#include "q4/errors.hpp"

namespace q4 {

MuVector g_weights(double kappa, const MuVector& mu) {
  const double k = kappa;
  return {mu[0], -2.0 * mu[1] / 3.0 - 2.0 * (k - 1.0) * mu[2] / (3.0 * k), -2.0 * mu[2] / (3.0 * k), mu[3]};
}

double eval_G_weights(double h, double kappa, const MuVector& nu, const Vec6& d1) {
  return (nu[0] * h * h + nu[2]) * d1(0) + nu[1] * d1(3) +
         nu[3] * (-4.0 * h * d1(4) + (3.0 * kappa * h * h - 4.0) * d1(5));
}

double eval_G(double h, const ModelParams& params, const PFVector& pf) {
  return eval_G_weights(h, params.kappa, g_weights(params.kappa, params.mu), pf.derivs);
}

GJet eval_G_jet(double h, const ModelParams& params, const PFSolve& s) {
  const double k = params.kappa;
  const MuVector nu = g_weights(k, params.mu);
  const double a = nu[0] * h * h + nu[2], a1 = 2.0 * nu[0] * h, a2 = 2.0 * nu[0];
  const double c = 3.0 * k * h * h - 4.0, c1 = 6.0 * k * h, c2 = 6.0 * k;
  GJet g;
  g.g = a * s.d1(0) + nu[1] * s.d1(3) + nu[3] * (-4.0 * h * s.d1(4) + c * s.d1(5));
  g.g1 = a1 * s.d1(0) + a * s.d2(0) + nu[1] * s.d2(3) +
         nu[3] * (-4.0 * s.d1(4) - 4.0 * h * s.d2(4) + c1 * s.d1(5) + c * s.d2(5));
  g.g2 = a2 * s.d1(0) + 2.0 * a1 * s.d2(0) + a * s.d3(0) + nu[1] * s.d3(3) +
         nu[3] * (-8.0 * s.d2(4) - 4.0 * h * s.d3(4) + c2 * s.d1(5) + 2.0 * c1 * s.d2(5) + c * s.d3(5));
  return g;
}

double eval_R(double h, const ModelParams& params, RRoute route, const PFVector& pf) {
  const double k = params.kappa;
  if (route == RRoute::pf_numeric) {
    const double A = 9.0 * h * h - 4.0, B = 9.0 * k * h * h - 4.0;
    if (std::abs(A) < 1e-12 || std::abs(B) < 1e-12) throw PoleError("eval_R: pole at h = " + std::to_string(h));
    const GJet g = eval_G_jet(h, params, pf_derivatives_full(h, pf.values, params));
    return apply_L2(g.g, g.g1, g.g2, h, params);
  }
  const MuVector nu = g_weights(k, params.mu);
  const double J1 = pf.derivs(0), J2 = pf.derivs(3);
  const auto second = derivative_formulas(DerivOrder::second, h, J1, J2, params);
  const auto third = derivative_formulas(DerivOrder::third, h, J1, J2, params);
  const double B = 9.0 * k * h * h - 4.0;
  const double m = 9.0 * k * h * h - 8.0;
  const double a = nu[0] * h * h + nu[2], a1 = 2.0 * nu[0] * h, a2 = 2.0 * nu[0];
  const double part1 = 5.0 * k * h * a * J1 - m * (a1 * J1 + a * second[0]) +
                       h * B * (a2 * J1 + 2.0 * a1 * second[0] + a * third[0]);
  const double part2 = 5.0 * k * h * J2 - m * second[1] + h * B * third[1];
  const double part4 = 4.0 / 3.0 * (k - 1.0) * (h * B * third[1] + (6.0 * k * h * h + 8.0) * second[1]);
  return part1 + nu[1] * part2 + nu[3] * part4;
}

double eval_R(double h, const ModelParams& params, RRoute route) {
  return eval_R(h, params, route, oracle_pf_vector(h, params));
}

// --- coefficients --------------------------------------------------------------

double RCoefficient::value(double kappa, const MuVector& mu) const {
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += weight[i].eval(kappa) * mu[i];
  return acc;
}

std::string RCoefficient::to_string() const {
  std::string out;
  for (int i = 0; i < 4; ++i) {
    if (weight[i].num.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += weight[i].to_string() + "*mu" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

RCoefficients::Numeric RCoefficients::evaluate(double kappa, const MuVector& mu) const {
  Numeric n;
  for (int j = 0; j < 4; ++j) n.a[j] = a[j].value(kappa, mu);
  for (int j = 0; j < 3; ++j) n.b[j] = b[j].value(kappa, mu);
  return n;
}

double RCoefficients::eval_R(double h, double kappa, const MuVector& mu, double J1, double J2) const {
  const Numeric n = evaluate(kappa, mu);
  const double h2 = h * h;
  const double p = n.a[0] + h2 * (n.a[1] + h2 * (n.a[2] + h2 * n.a[3]));
  const double q = n.b[0] + h2 * (n.b[1] + h2 * n.b[2]);
  const double A = 9.0 * h2 - 4.0, B = 9.0 * kappa * h2 - 4.0;
  return h * (p * J1 + q * J2) / (A * A * B);
}

std::string RCoefficients::to_text() const {
  std::ostringstream os;
  os << "# R(h) = h [(a0 + a1 h^2 + a2 h^4 + a3 h^6) I'00 + (b0 + b1 h^2 + b2 h^4) I'11]"
        " / ((9h^2 - 4)^2 (9k h^2 - 4))\n";
  os << "# weights mu: I = mu1 h I00 + mu2 I10 + mu3 I01 + mu4 (2 I_{-1,0} + 3k h I_{-1,1})\n";
  for (int j = 0; j < 4; ++j) os << "a" << j << " = " << a[j].to_string() << "\n";
  for (int j = 0; j < 3; ++j) os << "b" << j << " = " << b[j].to_string() << "\n";
  os << "# G-form basis: G = (nu1 h^2 + nu3) I'00 + nu2 I'11 + nu4 J\n";
  for (int j = 0; j < 4; ++j) {
    os << "a" << j << "[nu]";
    for (int m = 0; m < 4; ++m) os << " | nu" << m + 1 << ": " << a_nu[j][m].to_string();
    os << "\n";
  }
  for (int j = 0; j < 3; ++j) {
    os << "b" << j << "[nu]";
    for (int m = 0; m < 4; ++m) os << " | nu" << m + 1 << ": " << b_nu[j][m].to_string();
    os << "\n";
  }
  return os.str();
}

namespace {

using exact::HKPoly;
using exact::KPoly;
using exact::LinForm;
using exact::RatFn;

// Numerator coefficient over h (A^2 B) / h, checked for parity and degree.
HKPoly reduce_numerator(const RatFn& c, int max_degree) {
  const RatFn r = c.over(2, 1);
  if (!r.num.coeff(0).is_zero()) throw ConsistencyError("extract_R_coeffs: numerator lacks the factor h");
  std::vector<KPoly> shifted;
  for (int d = 1; d <= r.num.degree(); ++d) shifted.push_back(r.num.coeff(d));
  HKPoly p(std::move(shifted));
  if (p.degree() > max_degree) throw ConsistencyError("extract_R_coeffs: numerator degree too high");
  for (int d = 1; d <= p.degree(); d += 2) {
    if (!p.coeff(d).is_zero()) throw ConsistencyError("extract_R_coeffs: odd power in numerator");
  }
  return p;
}

RCoefficients extract() {
  const HKPoly h = HKPoly::h();
  const KPoly k = KPoly::kappa();
  const HKPoly hk(k);
  const HKPoly B = exact::poly_B();
  const LinForm J1{RatFn(HKPoly(1)), RatFn()};
  const LinForm J2{RatFn(), RatFn(HKPoly(1))};

  const auto L2 = [&](const LinForm& g) {
    const LinForm g1 = exact::differentiate(g);
    const LinForm g2 = exact::differentiate(g1);
    const RatFn c0(HKPoly(5) * hk * h);
    const RatFn c1(-(HKPoly(9) * hk * h * h - HKPoly(8)));
    const RatFn c2(h * B);
    return c0 * g + c1 * g1 + c2 * g2;
  };

  std::array<LinForm, 4> R;
  R[0] = L2(RatFn(h * h) * J1);
  R[1] = L2(J2);
  R[2] = L2(J1);
  {
    const LinForm d1 = exact::differentiate(J2);
    const LinForm d2 = exact::differentiate(d1);
    const RatFn pre(HKPoly(KPoly(exact::Rational(4, 3)) * (k - KPoly(1))));
    const RatFn t1(h * B);
    const RatFn t2(HKPoly(6) * hk * h * h + HKPoly(8));
    R[3] = pre * (t1 * d2 + t2 * d1);
  }

  RCoefficients out;
  for (int m = 0; m < 4; ++m) {
    const HKPoly p00 = reduce_numerator(R[m].c1, 6);
    const HKPoly p11 = reduce_numerator(R[m].c2, 4);
    for (int j = 0; j < 4; ++j) out.a_nu[j][m] = p00.coeff(2 * j);
    for (int j = 0; j < 3; ++j) out.b_nu[j][m] = p11.coeff(2 * j);
  }

  // nu1 = mu1, nu2 = -2/3 mu2 - 2(k-1)/(3k) mu3, nu3 = -2/(3k) mu3, nu4 = mu4.
  const KPoly m23(exact::Rational(-2, 3));
  const auto to_mu = [&](const std::array<KPoly, 4>& c) {
    RCoefficient r;
    r.weight[0] = {c[0], 0};
    r.weight[1] = {m23 * c[1], 0};
    r.weight[2] = {m23 * ((k - KPoly(1)) * c[1] + c[2]), 1};
    r.weight[3] = {c[3], 0};
    return r;
  };
  for (int j = 0; j < 4; ++j) out.a[j] = to_mu(out.a_nu[j]);
  for (int j = 0; j < 3; ++j) out.b[j] = to_mu(out.b_nu[j]);
  return out;
}

}  // namespace

const RCoefficients& extract_R_coeffs(const ModelParams&) {
  static const RCoefficients coeffs = extract();
  return coeffs;
}

}  // namespace q4
