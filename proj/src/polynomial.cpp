#include "pi2/polynomial.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace pi2 {

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

Polynomial Polynomial::variable() { return monomial(1); }

Polynomial Polynomial::monomial(int deg, const Rational& c) {
  Polynomial p;
  if (c == 0) return p;
  p.c_.assign(deg + 1, Rational(0));
  p.c_[deg] = c;
  return p;
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
  return c_[i];
}

const Rational& Polynomial::leading() const {
  if (is_zero()) throw std::invalid_argument("leading() of zero polynomial");
  return c_.back();
}

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  Polynomial r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  r.trim();
  return r;
}

Polynomial Polynomial::operator*(const Rational& s) const {
  if (s == 0) return Polynomial();
  Polynomial r(*this);
  for (auto& x : r.c_) x *= s;
  return r;
}

void Polynomial::divmod(const Polynomial& a, const Polynomial& b, Polynomial& q,
                        Polynomial& r) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  q = Polynomial();
  r = a;
  const int db = b.degree();
  const Rational& lb = b.leading();
  while (!r.is_zero() && r.degree() >= db) {
    int d = r.degree() - db;
    Rational f = r.leading() / lb;
    if (q.c_.size() < static_cast<size_t>(d + 1)) q.c_.resize(d + 1, Rational(0));
    q.c_[d] += f;
    for (int i = 0; i <= db; ++i) r.c_[d + i] -= f * b.c_[i];
    r.trim();
  }
  q.trim();
}

bool Polynomial::divide_exact(const Polynomial& b, Polynomial& q) const {
  Polynomial r;
  divmod(*this, b, q, r);
  return r.is_zero();
}

namespace {

// Integer-polynomial helpers for the primitive PRS gcd.
using ZPoly = std::vector<BigInt>;

ZPoly to_primitive_int(const Polynomial& p) {
  BigInt lcm = 1;
  for (const auto& c : p.coeffs()) {
    BigInt den = c.get_den();
    BigInt g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  ZPoly out(p.coeffs().size());
  BigInt content = 0;
  for (size_t i = 0; i < out.size(); ++i) {
    Rational c = p.coeffs()[i] * Rational(lcm);
    out[i] = c.get_num();  // exact integer after scaling
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[i].get_mpz_t());
  }
  if (content > 1) {
    for (auto& c : out) c /= content;
  }
  return out;
}

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

BigInt zcontent(const ZPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// Pseudo-remainder of a by b (lb^(da-db+1) * a mod b), then made primitive.
ZPoly zprem_primitive(ZPoly a, const ZPoly& b) {
  const int db = zdeg(b);
  const BigInt& lb = b.back();
  while (!a.empty() && zdeg(a) >= db) {
    int d = zdeg(a) - db;
    BigInt la = a.back();
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[d + i] -= la * b[i];
    ztrim(a);
  }
  BigInt g = zcontent(a);
  if (g > 1)
    for (auto& c : a) c /= g;
  return a;
}

}  // namespace

Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.make_monic();
  if (b.is_zero()) return a.make_monic();
  ZPoly u = to_primitive_int(a), v = to_primitive_int(b);
  if (zdeg(u) < zdeg(v)) std::swap(u, v);
  while (!v.empty()) {
    ZPoly r = zprem_primitive(u, v);
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<Rational> c(u.size());
  for (size_t i = 0; i < u.size(); ++i) c[i] = Rational(u[i]);
  return Polynomial(std::move(c)).make_monic();
}

Polynomial Polynomial::derivative() const {
  if (degree() <= 0) return Polynomial();
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Rational(static_cast<long>(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::substitute_neg() const {
  Polynomial r(*this);
  for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  r.trim();
  return r;
}

Polynomial Polynomial::make_monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / leading());
}

Rational Polynomial::eval(const Rational& z0) const {
  Rational acc(0);
  for (int i = degree(); i >= 0; --i) acc = acc * z0 + c_[i];
  return acc;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  if (p.is_zero()) return os << "0";
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    Rational c = p.coeff(i);
    if (c == 0) continue;
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rational a = abs(c);
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0) {
      if (a != 1) os << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os;
}

}  // namespace pi2
