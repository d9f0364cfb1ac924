#pragma once

#include <cmath>
#include <iosfwd>
#include <ostream>
#include <stdexcept>

#include "pi2/rational.hpp"

namespace pi2 {

// Element of the field Q(6^{1/3}): a + b*6^{1/3} + c*6^{2/3} with exact
// rational components. Used for exact anchors at mu = 0, where the root of
// the branch cubic is -2*6^{1/3}, and for the small-mu series coefficients.
struct Cbrt6 {
  Rational a{0}, b{0}, c{0};

  Cbrt6() = default;
  Cbrt6(const Rational& a_, const Rational& b_ = Rational(0),
        const Rational& c_ = Rational(0))
      : a(a_), b(b_), c(c_) {}

  static Cbrt6 alpha() { return Cbrt6(Rational(0), Rational(1)); }  // 6^{1/3}

  bool is_zero() const { return a == 0 && b == 0 && c == 0; }
  bool is_rational() const { return b == 0 && c == 0; }
  bool operator==(const Cbrt6& o) const { return a == o.a && b == o.b && c == o.c; }

  Cbrt6 operator-() const { return Cbrt6(-a, -b, -c); }
  friend Cbrt6 operator+(const Cbrt6& x, const Cbrt6& y) {
    return Cbrt6(x.a + y.a, x.b + y.b, x.c + y.c);
  }
  friend Cbrt6 operator-(const Cbrt6& x, const Cbrt6& y) {
    return Cbrt6(x.a - y.a, x.b - y.b, x.c - y.c);
  }
  friend Cbrt6 operator*(const Cbrt6& x, const Cbrt6& y) {
    // alpha^3 = 6, alpha^4 = 6 alpha
    return Cbrt6(x.a * y.a + 6 * (x.b * y.c + x.c * y.b),
                 x.a * y.b + x.b * y.a + 6 * x.c * y.c,
                 x.a * y.c + x.b * y.b + x.c * y.a);
  }
  Cbrt6& operator+=(const Cbrt6& o) { return *this = *this + o; }
  Cbrt6& operator-=(const Cbrt6& o) { return *this = *this - o; }
  Cbrt6& operator*=(const Cbrt6& o) { return *this = *this * o; }

  Cbrt6 inverse() const {
    // Adjugate over the norm N = a^3 + 6 b^3 + 36 c^3 - 18 abc.
    Rational n = a * a * a + 6 * b * b * b + 36 * c * c * c - 18 * a * b * c;
    if (n == 0) throw std::domain_error("inverse of zero in Q(6^{1/3})");
    Rational inv = Rational(1) / n;
    return Cbrt6((a * a - 6 * b * c) * inv, (6 * c * c - a * b) * inv,
                 (b * b - a * c) * inv);
  }
  friend Cbrt6 operator/(const Cbrt6& x, const Cbrt6& y) { return x * y.inverse(); }

  // True when the value is r * 6^{k/3} for a single k in {0,1,2}.
  bool is_monomial(Rational* r = nullptr, int* k = nullptr) const {
    int nz = (a != 0) + (b != 0) + (c != 0);
    if (nz > 1) return false;
    if (r && k) {
      if (b != 0) { *r = b; *k = 1; }
      else if (c != 0) { *r = c; *k = 2; }
      else { *r = a; *k = 0; }
    }
    return true;
  }

  long double to_ld() const {
    static const long double al = cbrtl(6.0L);
    return static_cast<long double>(a.get_d()) +
           static_cast<long double>(b.get_d()) * al +
           static_cast<long double>(c.get_d()) * al * al;
  }

  friend std::ostream& operator<<(std::ostream& os, const Cbrt6& x) {
    return os << "(" << x.a.get_str() << " + " << x.b.get_str() << "*6^(1/3) + "
              << x.c.get_str() << "*6^(2/3))";
  }
};

}  // namespace pi2
