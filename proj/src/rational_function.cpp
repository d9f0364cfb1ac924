#include "pi2/rational_function.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace pi2 {

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("rational function with zero denominator");
  reduce();
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = Polynomial(Rational(1));
    return;
  }
  Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    Polynomial q;
    num_.divide_exact(g, q);
    num_ = q;
    den_.divide_exact(g, q);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r(*this);
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  // a.num/a.den + b.num/b.den with the classic gcd trick on the denominators.
  Polynomial g = Polynomial::gcd(a.den_, b.den_);
  Polynomial da, db;
  a.den_.divide_exact(g, da);
  b.den_.divide_exact(g, db);
  Polynomial num = a.num_ * db + b.num_ * da;
  Polynomial den = a.den_ * db;
  return RationalFunction(std::move(num), std::move(den));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return RationalFunction();
  // Operands are reduced, so only cross-gcds are needed.
  Polynomial g1 = Polynomial::gcd(a.num_, b.den_);
  Polynomial g2 = Polynomial::gcd(b.num_, a.den_);
  Polynomial an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
  Polynomial q;
  if (g1.degree() > 0) {
    an.divide_exact(g1, q); an = q;
    bd.divide_exact(g1, q); bd = q;
  }
  if (g2.degree() > 0) {
    bn.divide_exact(g2, q); bn = q;
    ad.divide_exact(g2, q); ad = q;
  }
  RationalFunction r;
  r.num_ = an * bn;
  r.den_ = ad * bd;
  Rational lead = r.den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  return a * b.reciprocal();
}

RationalFunction RationalFunction::reciprocal() const {
  if (is_zero()) throw std::invalid_argument("reciprocal of the zero rational function");
  RationalFunction r;
  r.num_ = den_;
  r.den_ = num_;
  Rational lead = r.den_.leading();
  if (lead != 1) {
    Rational inv = Rational(1) / lead;
    r.num_ = r.num_ * inv;
    r.den_ = r.den_ * inv;
  }
  return r;
}

RationalFunction RationalFunction::derivative() const {
  Polynomial num = num_.derivative() * den_ - num_ * den_.derivative();
  Polynomial den = den_ * den_;
  return RationalFunction(std::move(num), std::move(den));
}

RationalFunction RationalFunction::substitute_neg() const {
  return RationalFunction(num_.substitute_neg(), den_.substitute_neg());
}

Rational RationalFunction::eval(const Rational& z0) const {
  Rational d = den_.eval(z0);
  if (d == 0) {
    std::ostringstream os;
    os << "pole of " << *this << " at z = " << z0.get_str();
    throw PoleError(os.str());
  }
  return num_.eval(z0) / d;
}

void RationalFunction::check_pole_fp(double den_value, double z0) const {
  if (std::abs(den_value) > 1e-300) return;
  // Identify which irreducible-looking factor vanished for the message.
  std::ostringstream os;
  os << "denominator " << den_ << " vanishes at z = " << z0;
  if (std::abs(z0) < 1e-12) os << " (factor z)";
  throw PoleError(os.str());
}

std::ostream& operator<<(std::ostream& os, const RationalFunction& f) {
  if (f.den_.degree() == 0) return os << "(" << f.num_ << ")";
  return os << "(" << f.num_ << ") / (" << f.den_ << ")";
}

}  // namespace pi2
