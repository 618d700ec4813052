#pragma once

// Exact rational arithmetic for the coefficient extraction: polynomials in
// kappa, polynomials in h over those, and rational functions in h whose
// denominators are powers of A = 9h^2 - 4 and B = 9 kappa h^2 - 4.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace q4::exact {

using Rational = boost::multiprecision::cpp_rational;

/// Polynomial in kappa with rational coefficients (ascending powers).
class KPoly {
 public:
  KPoly() = default;
  KPoly(Rational c);  // NOLINT(google-explicit-constructor)
  KPoly(long long c) : KPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static KPoly kappa();

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double eval(double kappa) const;
  std::string to_string(const std::string& var = "k") const;

  KPoly& operator+=(const KPoly& o);
  KPoly& operator-=(const KPoly& o);
  friend KPoly operator+(KPoly l, const KPoly& r) { return l += r; }
  friend KPoly operator-(KPoly l, const KPoly& r) { return l -= r; }
  friend KPoly operator-(KPoly p);
  friend KPoly operator*(const KPoly& l, const KPoly& r);
  friend bool operator==(const KPoly& l, const KPoly& r) { return l.c_ == r.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Polynomial in h with KPoly coefficients (ascending powers).
class HKPoly {
 public:
  HKPoly() = default;
  HKPoly(KPoly c);  // NOLINT(google-explicit-constructor)
  HKPoly(long long c) : HKPoly(KPoly(c)) {}  // NOLINT(google-explicit-constructor)
  explicit HKPoly(std::vector<KPoly> c);
  static HKPoly h();

  const std::vector<KPoly>& coeffs() const { return c_; }
  KPoly coeff(int d) const;
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double eval(double h, double kappa) const;
  HKPoly derivative() const;

  HKPoly& operator+=(const HKPoly& o);
  HKPoly& operator-=(const HKPoly& o);
  friend HKPoly operator+(HKPoly l, const HKPoly& r) { return l += r; }
  friend HKPoly operator-(HKPoly l, const HKPoly& r) { return l -= r; }
  friend HKPoly operator-(HKPoly p);
  friend HKPoly operator*(const HKPoly& l, const HKPoly& r);
  friend bool operator==(const HKPoly& l, const HKPoly& r) { return l.c_ == r.c_; }

 private:
  void trim();
  std::vector<KPoly> c_;
};

/// Exact quotient n / d for a divisor with nonzero rational constant term.
/// Throws ConsistencyError if the division leaves a remainder.
HKPoly divide_exact(const HKPoly& n, const HKPoly& d);

HKPoly poly_A();  // 9h^2 - 4
HKPoly poly_B();  // 9 kappa h^2 - 4

/// num / (A^a B^b).
struct RatFn {
  HKPoly num;
  int a = 0;
  int b = 0;

  RatFn() = default;
  RatFn(HKPoly n, int pa = 0, int pb = 0) : num(std::move(n)), a(pa), b(pb) {}  // NOLINT

  double eval(double h, double kappa) const;
  RatFn derivative() const;
  /// Same function written over A^pa B^pb (pa >= a and pb >= b, or exact cancellation).
  RatFn over(int pa, int pb) const;
};

RatFn operator+(const RatFn& l, const RatFn& r);
RatFn operator*(const RatFn& l, const RatFn& r);

/// c1 J1 + c2 J2 with J1 = I'00, J2 = I'11.
struct LinForm {
  RatFn c1, c2;
};

LinForm operator+(const LinForm& l, const LinForm& r);
LinForm operator*(const RatFn& f, const LinForm& l);
/// d/dh, using J1' and J2' from the two-dimensional system.
LinForm differentiate(const LinForm& l);

/// num(kappa) / kappa^kpow.
struct RatK {
  KPoly num;
  int kpow = 0;
  double eval(double kappa) const;
  std::string to_string() const;
};

}  // namespace q4::exact
