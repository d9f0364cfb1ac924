#pragma once

#include <iosfwd>
#include <stdexcept>

#include "pi2/polynomial.hpp"

namespace pi2 {

// Thrown by numeric evaluation when the denominator vanishes at the point;
// carries the factor that vanished.
struct PoleError : std::domain_error {
  explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// Reduced ratio of polynomials in z: gcd(num, den) = 1 and den monic.
// Equality is decidable on the canonical form.
class RationalFunction {
 public:
  RationalFunction() : den_(Rational(1)) {}
  RationalFunction(const Rational& c) : num_(c), den_(Rational(1)) {}  // NOLINT
  RationalFunction(const Polynomial& p) : num_(p), den_(Rational(1)) {}  // NOLINT
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  bool operator==(const RationalFunction& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }

  RationalFunction reciprocal() const;
  RationalFunction derivative() const;
  RationalFunction substitute_neg() const;   // f(z) -> f(-z)

  // Exact evaluation at a rational point; throws PoleError at a pole.
  Rational eval(const Rational& z0) const;

  // Horner evaluation in a floating type; throws PoleError when the
  // denominator vanishes to working precision, naming the vanishing factor.
  template <typename F>
  F eval_fp(const F& z0) const {
    F d = den_.eval_fp(z0);
    check_pole_fp(static_cast<double>(d), static_cast<double>(z0));
    return num_.eval_fp(z0) / d;
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& f);

 private:
  void reduce();
  void check_pole_fp(double den_value, double z0) const;
  Polynomial num_, den_;
};

}  // namespace pi2
