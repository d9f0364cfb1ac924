#pragma once

#include <initializer_list>
#include <iosfwd>
#include <vector>

#include "pi2/rational.hpp"

namespace pi2 {

// Dense univariate polynomial in z with exact rational coefficients,
// stored low degree first with no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(const Rational& c);
  explicit Polynomial(std::vector<Rational> coeffs);
  Polynomial(std::initializer_list<Rational> coeffs);

  static Polynomial variable();                       // z
  static Polynomial monomial(int deg, const Rational& c = Rational(1));

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  Rational coeff(int i) const;                        // 0 outside range
  const Rational& leading() const;                    // requires nonzero
  const std::vector<Rational>& coeffs() const { return c_; }

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator*(const Rational& s) const;
  bool operator==(const Polynomial& o) const { return c_ == o.c_; }

  // Euclidean division; throws std::invalid_argument on zero divisor.
  static void divmod(const Polynomial& a, const Polynomial& b, Polynomial& q,
                     Polynomial& r);
  // Quotient when the division is exact, otherwise nullopt-like zero + flag.
  bool divide_exact(const Polynomial& b, Polynomial& q) const;

  // Monic gcd computed over the integers with a primitive PRS to keep
  // intermediate coefficients small.
  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  Polynomial derivative() const;
  Polynomial substitute_neg() const;                  // p(z) -> p(-z)
  Polynomial make_monic() const;

  Rational eval(const Rational& z0) const;            // exact Horner
  template <typename F>
  F eval_fp(const F& z0) const {                      // Horner in F
    F acc = F(0);
    for (int i = degree(); i >= 0; --i) acc = acc * z0 + F(c_[i].get_d());
    return acc;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p);

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace pi2
