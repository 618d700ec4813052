#include "q4/exact.hpp"

#include <algorithm>

#include "q4/errors.hpp"

namespace q4::exact {

// --- KPoly -------------------------------------------------------------------

KPoly::KPoly(Rational c) {
  if (c != 0) c_.push_back(c);
}

KPoly KPoly::kappa() {
  KPoly p;
  p.c_ = {Rational(0), Rational(1)};
  return p;
}

void KPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

double KPoly::eval(double kappa) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * kappa + it->convert_to<double>();
  return acc;
}

std::string KPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    const Rational& c = c_[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const bool unit = mag == 1;
    if (!unit || d == 0) out += mag.str();
    if (d > 0) {
      if (!unit) out += "*";
      out += var;
      if (d > 1) out += "^" + std::to_string(d);
    }
  }
  return out;
}

KPoly& KPoly::operator+=(const KPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

KPoly& KPoly::operator-=(const KPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

KPoly operator-(KPoly p) {
  for (auto& c : p.c_) c = -c;
  return p;
}

KPoly operator*(const KPoly& l, const KPoly& r) {
  KPoly out;
  if (l.c_.empty() || r.c_.empty()) return out;
  out.c_.assign(l.c_.size() + r.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < l.c_.size(); ++i)
    for (std::size_t j = 0; j < r.c_.size(); ++j) out.c_[i + j] += l.c_[i] * r.c_[j];
  out.trim();
  return out;
}

// --- HKPoly ------------------------------------------------------------------

HKPoly::HKPoly(KPoly c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

HKPoly::HKPoly(std::vector<KPoly> c) : c_(std::move(c)) { trim(); }

HKPoly HKPoly::h() { return HKPoly(std::vector<KPoly>{KPoly(), KPoly(1)}); }

void HKPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

KPoly HKPoly::coeff(int d) const {
  if (d < 0 || d >= static_cast<int>(c_.size())) return {};
  return c_[static_cast<std::size_t>(d)];
}

double HKPoly::eval(double h, double kappa) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * h + it->eval(kappa);
  return acc;
}

HKPoly HKPoly::derivative() const {
  std::vector<KPoly> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(KPoly(static_cast<long long>(i)) * c_[i]);
  return HKPoly(std::move(d));
}

HKPoly& HKPoly::operator+=(const HKPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

HKPoly& HKPoly::operator-=(const HKPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

HKPoly operator-(HKPoly p) {
  for (auto& c : p.c_) c = -c;
  return p;
}

HKPoly operator*(const HKPoly& l, const HKPoly& r) {
  if (l.c_.empty() || r.c_.empty()) return {};
  std::vector<KPoly> out(l.c_.size() + r.c_.size() - 1);
  for (std::size_t i = 0; i < l.c_.size(); ++i)
    for (std::size_t j = 0; j < r.c_.size(); ++j) out[i + j] += l.c_[i] * r.c_[j];
  return HKPoly(std::move(out));
}

HKPoly divide_exact(const HKPoly& n, const HKPoly& d) {
  if (n.is_zero()) return {};
  const KPoly d0 = d.coeff(0);
  if (d0.degree() != 0) throw ConsistencyError("divide_exact: divisor needs a nonzero rational constant term");
  const Rational inv = 1 / d0.coeffs()[0];
  const int nq = n.degree() - d.degree();
  if (nq < 0) throw ConsistencyError("divide_exact: divisor degree exceeds dividend degree");
  std::vector<KPoly> q(static_cast<std::size_t>(nq) + 1);
  for (int i = 0; i <= nq; ++i) {
    KPoly acc = n.coeff(i);
    for (int j = 1; j <= std::min(i, d.degree()); ++j) acc -= d.coeff(j) * q[static_cast<std::size_t>(i - j)];
    q[static_cast<std::size_t>(i)] = acc * KPoly(inv);
  }
  HKPoly quotient(std::move(q));
  if (!(quotient * d == n)) throw ConsistencyError("divide_exact: nonzero remainder, denominator does not cancel");
  return quotient;
}

HKPoly poly_A() { return HKPoly(std::vector<KPoly>{KPoly(-4), KPoly(), KPoly(9)}); }
HKPoly poly_B() { return HKPoly(std::vector<KPoly>{KPoly(-4), KPoly(), KPoly(9) * KPoly::kappa()}); }

// --- RatFn -------------------------------------------------------------------

namespace {

HKPoly power(const HKPoly& p, int e) {
  HKPoly out(1);
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

}  // namespace

double RatFn::eval(double h, double kappa) const {
  const double A = 9.0 * h * h - 4.0;
  const double B = 9.0 * kappa * h * h - 4.0;
  double den = 1.0;
  for (int i = 0; i < a; ++i) den *= A;
  for (int i = 0; i < b; ++i) den *= B;
  return num.eval(h, kappa) / den;
}

RatFn RatFn::derivative() const {
  const HKPoly A = poly_A(), B = poly_B();
  HKPoly n = num.derivative() * A * B;
  if (a > 0) n -= HKPoly(KPoly(a)) * num * A.derivative() * B;
  if (b > 0) n -= HKPoly(KPoly(b)) * num * A * B.derivative();
  return RatFn(std::move(n), a + 1, b + 1);
}

RatFn RatFn::over(int pa, int pb) const {
  HKPoly n = num;
  if (pa >= a) {
    n = n * power(poly_A(), pa - a);
  } else {
    n = divide_exact(n, power(poly_A(), a - pa));
  }
  if (pb >= b) {
    n = n * power(poly_B(), pb - b);
  } else {
    n = divide_exact(n, power(poly_B(), b - pb));
  }
  return RatFn(std::move(n), pa, pb);
}

RatFn operator+(const RatFn& l, const RatFn& r) {
  if (l.num.is_zero()) return r;
  if (r.num.is_zero()) return l;
  const int pa = std::max(l.a, r.a), pb = std::max(l.b, r.b);
  return RatFn(l.over(pa, pb).num + r.over(pa, pb).num, pa, pb);
}

RatFn operator*(const RatFn& l, const RatFn& r) { return RatFn(l.num * r.num, l.a + r.a, l.b + r.b); }

// --- LinForm -----------------------------------------------------------------

LinForm operator+(const LinForm& l, const LinForm& r) { return {l.c1 + r.c1, l.c2 + r.c2}; }

LinForm operator*(const RatFn& f, const LinForm& l) { return {f * l.c1, f * l.c2}; }

LinForm differentiate(const LinForm& l) {
  // J1' = (-3h B J1 + 12(k-1) h J2) / (A B),  J2' = (-3h J1 + 3h J2) / A.
  const HKPoly h = HKPoly::h();
  const KPoly km1 = KPoly::kappa() - KPoly(1);
  const RatFn f00(HKPoly(-3) * h * poly_B(), 1, 1);
  const RatFn f01(HKPoly(KPoly(12) * km1) * h, 1, 1);
  const RatFn f10(HKPoly(-3) * h, 1, 0);
  const RatFn f11(HKPoly(3) * h, 1, 0);
  LinForm out;
  out.c1 = l.c1.derivative() + l.c1 * f00 + l.c2 * f10;
  out.c2 = l.c2.derivative() + l.c1 * f01 + l.c2 * f11;
  return out;
}

// --- RatK --------------------------------------------------------------------

double RatK::eval(double kappa) const {
  double den = 1.0;
  for (int i = 0; i < kpow; ++i) den *= kappa;
  return num.eval(kappa) / den;
}

std::string RatK::to_string() const {
  if (num.is_zero()) return "0";
  std::string s = "(" + num.to_string() + ")";
  if (kpow == 1) s += "/k";
  if (kpow > 1) s += "/k^" + std::to_string(kpow);
  return s;
}

}  // namespace q4::exact
