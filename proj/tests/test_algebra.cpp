#include <cmath>
#include <random>

#include "doctest.h"
#include "pi2/bigfloat.hpp"
#include "pi2/expansion.hpp"
#include "pi2/laurent.hpp"

using namespace pi2;

namespace {

RationalFunction rf(Polynomial num, Polynomial den) {
  return RationalFunction(std::move(num), std::move(den));
}

std::mt19937 rng(20240817);

Rational random_rational() {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 6);
  return rat(num(rng), den(rng));
}

Polynomial random_poly(int maxdeg, bool nonzero = false) {
  std::uniform_int_distribution<int> deg(0, maxdeg);
  std::vector<Rational> c(deg(rng) + 1);
  for (auto& x : c) x = random_rational();
  Polynomial p(c);
  if (nonzero && p.is_zero()) return Polynomial(Rational(1));
  return p;
}

RationalFunction random_rf() { return rf(random_poly(3), random_poly(2, true)); }

LaurentSeries random_series(bool nonzero_lead = false) {
  std::uniform_int_distribution<int> lo(-2, 2), len(1, 4);
  int l = lo(rng), n = len(rng);
  std::vector<RationalFunction> c(n);
  for (auto& x : c) x = random_rf();
  if (nonzero_lead && c[0].is_zero()) c[0] = RationalFunction(Rational(1));
  return LaurentSeries(l, std::move(c), l + n + 3);
}

bool equal_on_common_range(const LaurentSeries& a, const LaurentSeries& b) {
  int t = std::min(a.trunc(), b.trunc());
  int lo = 0;
  if (!a.is_zero()) lo = std::min(lo, a.lowest());
  if (!b.is_zero()) lo = std::min(lo, b.lowest());
  for (int m = lo - 1; m <= t; ++m)
    if (!(a.coeff(m) == b.coeff(m))) return false;
  return true;
}

}  // namespace

TEST_CASE("rational function arithmetic on the worked examples") {
  RationalFunction z30(Polynomial::monomial(1, rat(1, 30)));
  CHECK(z30 * z30 == RationalFunction(Polynomial::monomial(2, rat(1, 900))));

  RationalFunction a(Polynomial({rat(-24), rat(0), rat(0), rat(1)}));
  CHECK(a / a == RationalFunction(Rational(1)));

  // ((z^3-24)/(36z))^{-1} * 1/24 = 3z/(2(z^3-24)) = 1/(z^2 - 8 mu(z))
  RationalFunction c3 = g_coeffs(Branch::plus).c3;
  RationalFunction s = c3.reciprocal() * RationalFunction(rat(1, 24));
  CHECK(s == rf(Polynomial::monomial(1, rat(3, 2)), Polynomial({rat(-24), rat(0), rat(0), rat(1)})));
  CHECK(s == s_of_z(Branch::plus));
}

TEST_CASE("division by the zero function is rejected") {
  RationalFunction z(Polynomial::variable());
  CHECK_THROWS_AS(z / RationalFunction(), std::invalid_argument);
  CHECK_THROWS_AS(RationalFunction().reciprocal(), std::invalid_argument);
}

TEST_CASE("ring laws hold exactly on random rational functions") {
  for (int i = 0; i < 60; ++i) {
    RationalFunction a = random_rf(), b = random_rf(), c = random_rf();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * RationalFunction(Rational(1)) == a);
    CHECK(a + RationalFunction() == a);
  }
}

TEST_CASE("normalization is canonical and idempotent") {
  Polynomial num({rat(2), rat(4)});
  Polynomial den({rat(4), rat(8), rat(2)});
  RationalFunction f = rf(num, den);
  CHECK(f.den().leading() == 1);
  CHECK(Polynomial::gcd(f.num(), f.den()).degree() == 0);
  // multiplying numerator and denominator by a common factor changes nothing
  Polynomial g({rat(1), rat(3), rat(1)});
  CHECK(rf(num * g, den * g) == f);
  CHECK(rf(f.num(), f.den()) == f);
}

TEST_CASE("series multiplication follows the worked examples") {
  RationalFunction one(Rational(1));
  LaurentSeries a(-1, {one, one}, 8);                       // w^{-1} + 1
  LaurentSeries b(0, {one, -one}, 8);                       // 1 - w
  LaurentSeries p = a * b;
  CHECK(p.coeff(-1) == one);
  CHECK(p.coeff(0).is_zero());
  CHECK(p.coeff(1) == -one);

  LaurentSeries s = random_series();
  CHECK(equal_on_common_range(s * LaurentSeries::monomial(0, one), s));
}

TEST_CASE("series reciprocal inverts up to truncation") {
  GCoefficients g = g_coeffs(Branch::plus);
  LaurentSeries p(0, {g.c3, g.c2, g.c1}, LaurentSeries::kExact);
  LaurentSeries inv = p.reciprocal_to(6);
  CHECK(inv.coeff(0) == g.c3.reciprocal());
  CHECK(inv.coeff(1) == -(g.c2 * g.c3.reciprocal() * g.c3.reciprocal()));
  LaurentSeries prod = p * inv;
  CHECK(prod.coeff(0) == RationalFunction(Rational(1)));
  for (int m = 1; m <= prod.trunc(); ++m) CHECK(prod.coeff(m).is_zero());

  // multiply-back oracle for the first-order coefficient
  CHECK((p * inv).coeff(1).is_zero());

  LaurentSeries w2 = LaurentSeries::monomial(2, RationalFunction(Rational(1)));
  LaurentSeries w2inv = w2.reciprocal();
  CHECK(w2inv.coeff(-2) == RationalFunction(Rational(1)));
  CHECK(w2inv.trunc() == LaurentSeries::kExact);

  CHECK_THROWS_AS(LaurentSeries::zero().reciprocal(), std::invalid_argument);
}

TEST_CASE("ring laws hold on random Laurent series up to shared truncation") {
  RationalFunction one(Rational(1));
  LaurentSeries unit = LaurentSeries::monomial(0, one);
  for (int i = 0; i < 40; ++i) {
    LaurentSeries a = random_series(), b = random_series(), c = random_series();
    CHECK(equal_on_common_range((a + b) + c, a + (b + c)));
    CHECK(equal_on_common_range((a * b) * c, a * (b * c)));
    CHECK(equal_on_common_range(a * (b + c), a * b + a * c));
    CHECK(equal_on_common_range(a * unit, a));
    CHECK(equal_on_common_range(a + LaurentSeries::zero(), a));
  }
}

TEST_CASE("reciprocal is an involution up to truncation") {
  for (int i = 0; i < 100; ++i) {
    LaurentSeries s = random_series(true);
    LaurentSeries back = s.reciprocal().reciprocal();
    CHECK(equal_on_common_range(back, s.truncated(back.trunc())));
  }
}

TEST_CASE("principal and analytic parts slice exactly") {
  RationalFunction one(Rational(1));
  LaurentSeries s(-2, {one, RationalFunction(), RationalFunction(Rational(3)), one}, 9);
  LaurentSeries pp = s.principal_part();
  CHECK(pp.coeff(-2) == one);
  CHECK(pp.coeff(-1).is_zero());
  CHECK(pp.trunc() == LaurentSeries::kExact);
  LaurentSeries ap = s.analytic_part();
  CHECK(ap.coeff(0) == RationalFunction(Rational(3)));
  CHECK(ap.lowest() == 0);

  LaurentSeries analytic(0, {one, one}, 7);
  CHECK(analytic.principal_part().is_zero());

  for (int i = 0; i < 40; ++i) {
    LaurentSeries r = random_series();
    CHECK(equal_on_common_range(r.principal_part() + r.analytic_part(), r));
  }
}

TEST_CASE("truncation bookkeeping takes the tightest valid order") {
  RationalFunction one(Rational(1));
  LaurentSeries a(-1, {one, one}, 5);
  LaurentSeries b(2, {one}, 9);
  CHECK((a + b).trunc() == 5);
  CHECK((a * b).trunc() == 7);   // min(5+2, 9-1)
  CHECK_THROWS_AS(a.coeff(6), TruncationError);
}

TEST_CASE("numeric evaluation meets the precision contract") {
  // 3z/(2(z^3-24)) at z = -2*6^{1/3} equals 6^{1/3}/24 = 1/(4*6^{2/3})
  RationalFunction s = s_of_z(Branch::plus);
  long double z0 = -2.0L * cbrtl(6.0L);
  long double v = s.eval_fp<long double>(z0);
  long double expect = cbrtl(6.0L) / 24.0L;   // = 1/(4*6^{2/3}) ~ 0.0757134
  CHECK(fabsl(v - expect) <= 1e-17L * fabsl(expect));
  CHECK(static_cast<double>(v) ==
        doctest::Approx(1.0 / (4.0 * std::pow(6.0, 2.0 / 3.0))).epsilon(1e-12));

  BigFloat zb = -2 * cbrt_big(big(Rational(6), 192));
  BigFloat num = eval_poly_big(s.num(), zb), den = eval_poly_big(s.den(), zb);
  BigFloat vv(0, 192);
  mpf_set_d(vv.get_mpf_t(), static_cast<double>(v));
  BigFloat rel = (num / den - vv) / vv;
  CHECK(std::fabs(rel.get_d()) <= std::ldexp(1.0, -50));

  CHECK(RationalFunction(Rational(1)).eval_fp<double>(3.7) == 1.0);
  RationalFunction z30(Polynomial::monomial(1, rat(1, 30)));
  CHECK(z30.eval(rat(-2)) == rat(-1, 15));

  RationalFunction pole = RationalFunction(Rational(1)) / RationalFunction(Polynomial::variable());
  CHECK_THROWS_AS(pole.eval_fp<double>(0.0), PoleError);
  CHECK_THROWS_AS(pole.eval(Rational(0)), PoleError);
}

TEST_CASE("numeric evaluation of a truncated series") {
  // S = w^{-1} c3(z) + z w: evaluate at (z0, w0) and compare directly
  GCoefficients g = g_coeffs(Branch::plus);
  LaurentSeries s = LaurentSeries::monomial(-1, g.c3, 6) +
                    LaurentSeries::monomial(1, RationalFunction(Polynomial::variable()), 6);
  long double z0 = 1.5L, w0 = 0.25L;
  long double expect = g.c3.eval_fp<long double>(z0) / w0 + z0 * w0;
  CHECK(static_cast<double>(s.eval_fp<long double>(z0, w0)) ==
        doctest::Approx(static_cast<double>(expect)).epsilon(1e-15));
  CHECK_THROWS_AS(s.eval_fp<long double>(0.0L, 0.5L), PoleError);  // c3 pole at z=0
}

TEST_CASE("exact field Q(6^{1/3})") {
  Cbrt6 al = Cbrt6::alpha();
  CHECK(al * al * al == Cbrt6(Rational(6)));
  for (int i = 0; i < 30; ++i) {
    Cbrt6 x(random_rational(), random_rational(), random_rational());
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == Cbrt6(Rational(1)));
  }
  CHECK(Cbrt6(Rational(0), rat(-2)).to_ld() == doctest::Approx(-3.6342411856642816));
}
