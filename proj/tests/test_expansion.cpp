#include <cmath>

#include "doctest.h"
#include "pi2/expansion.hpp"

using namespace pi2;

namespace {

RationalFunction rfq(long num, long den) { return RationalFunction(rat(num, den)); }

// Literal coefficient-wise recurrence with the inner sum capped at i <= bound.
// bound == -1 means the full convolution.
std::array<std::array<RationalFunction, 2>, 2> recurrence_rhs(
    const ExpansionTable& t, int k, int m, int bound_nj) {
  auto acc = t.q(k).coeff(m);
  for (int j = 1; j < k; ++j) {
    int bound = (bound_nj < 0) ? m + pole_order(k - j) : m + pole_order(j);
    for (int i = 0; i <= bound; ++i) {
      if (i > t.r(j).trunc()) break;
      if (m - i < -pole_order(k - j)) continue;
      auto rj = t.r(j).coeff(i);
      auto q = t.q(k - j).coeff(m - i);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          acc[a][b] += rj[a][0] * q[0][b] + rj[a][1] * q[1][b];
        }
    }
  }
  return acc;
}

bool matrices_equal(const std::array<std::array<RationalFunction, 2>, 2>& a,
                    const std::array<std::array<RationalFunction, 2>, 2>& b,
                    bool negate_b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      RationalFunction rhs = negate_b ? -b[i][j] : b[i][j];
      if (!(a[i][j] == rhs)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("g-function coefficients after mu elimination") {
  GCoefficients g = g_coeffs(Branch::plus);
  CHECK(g.c1 == rfq(1, 105));
  CHECK(g.c2 == RationalFunction(Polynomial::monomial(1, rat(1, 30))));
  RationalFunction c3_expect(Polynomial({rat(-24), rat(0), rat(0), rat(1)}),
                             Polynomial::monomial(1, rat(36)));
  CHECK(g.c3 == c3_expect);
  // numeric: c3 at mu = 0 is 6^{-1/3}
  long double v = g.c3.eval_fp<long double>(-2.0L * cbrtl(6.0L));
  CHECK(static_cast<double>(v) == doctest::Approx(0.5503212081491045).epsilon(1e-14));

  GCoefficients gm = g_coeffs(Branch::minus);
  RationalFunction c3m_expect(Polynomial({rat(24), rat(0), rat(0), rat(1)}),
                              Polynomial::monomial(1, rat(36)));
  CHECK(gm.c3 == c3m_expect);
}

TEST_CASE("Airy constants: exact values and the ratio law") {
  CHECK(airy_constants(1).t_hat == rat(5, 48));
  CHECK(airy_constants(1).t == rat(-7, 48));
  CHECK(airy_constants(2).t_hat == rat(385, 4608));
  for (int k = 1; k <= 5; ++k) {
    AiryConstants a = airy_constants(k);
    CHECK(a.t * rat(6 * k - 1, 1) == -(a.t_hat * rat(6 * k + 1, 1)));
    CHECK(a.t_hat > 0);
  }
}

TEST_CASE("Q_k Laurent data: pole orders, structure, displayed entries") {
  MatrixLaurentSeries q1 = q_series(1, 4, Branch::plus);
  CHECK(q1.lowest() == -2);
  CHECK(q1.is_anti_diagonal());
  // principal part has exactly two matrix coefficients (pole order 2)
  MatrixLaurentSeries pp = q1.principal_part();
  int nonzero = 0;
  for (int m = -2; m < 0; ++m) {
    auto c = pp.coeff(m);
    bool any = false;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) any |= !c[i][j].is_zero();
    if (any) ++nonzero;
  }
  CHECK(nonzero == 2);

  MatrixLaurentSeries q2 = q_series(2, 4, Branch::plus);
  CHECK(q2.is_diagonal());
  CHECK(q2.lowest() == -3);
  MatrixLaurentSeries q3 = q_series(3, 4, Branch::plus);
  CHECK(q3.is_anti_diagonal());
  CHECK(q3.lowest() == -5);

  // Q1^(-1) entry (1,2) = -(2/3) c2 t_hat_1 / c3^2
  GCoefficients g = g_coeffs(Branch::plus);
  RationalFunction expect = rfq(-2, 3) * g.c2 * RationalFunction(airy_constants(1).t_hat) *
                            g.c3.reciprocal() * g.c3.reciprocal();
  CHECK(q1.coeff(-1)[0][1] == expect);

  CHECK_THROWS_AS(q_series(1, -3, Branch::plus), TruncationError);
}

TEST_CASE("R recursion base case and displayed matrices") {
  const ExpansionTable& t = expansion_table(Branch::plus, 2);
  // interior coefficients of R_1 equal -Q_1 interior coefficients
  for (int m = 0; m <= 3; ++m) {
    CHECK(matrices_equal(t.r(1).coeff(m), t.q(1).coeff(m), true));
  }
  // exterior ones equal +Q_1
  for (int m = -2; m < 0; ++m) {
    CHECK(matrices_equal(t.r(1).coeff(m), t.q(1).coeff(m), false));
  }

  // (R_1^(-1))_{12} at mu=0 equals 1/36
  long double v = t.r(1).coeff(-1)[0][1].eval_fp<long double>(-2.0L * cbrtl(6.0L));
  CHECK(static_cast<double>(v) == doctest::Approx(1.0 / 36.0).epsilon(1e-14));
}

TEST_CASE("parity and pole orders hold for all computed k") {
  const ExpansionTable& t = expansion_table(Branch::plus, 4);
  for (int k = 1; k <= 8; ++k) {
    if (k % 2 == 0) {
      CHECK(t.r(k).is_diagonal());
      CHECK(t.q(k).is_diagonal());
    } else {
      CHECK(t.r(k).is_anti_diagonal());
      CHECK(t.q(k).is_anti_diagonal());
    }
    CHECK(t.q(k).lowest() == -pole_order(k));
    CHECK(t.r(k).lowest() >= -pole_order(k));
  }
}

TEST_CASE("e1 matches the closed form exactly, e2 anchors") {
  const ExpansionTable& t = expansion_table(Branch::plus, 2);
  RationalFunction s = s_of_z(Branch::plus);
  RationalFunction z2(Polynomial::monomial(2));
  RationalFunction closed =
      rfq(-64, 3) * s * s * s + z2 * rfq(256, 3) * s * s * s * s;
  CHECK(t.e_k(1) == closed);
  CHECK(t.e_eval_mu0(1) == Cbrt6(rat(1, 36)));
  CHECK(t.e_eval_exact(1, rat(-2)) == rat(9, 1024));
  // e2(0) = 7*6^{2/3}/2592
  CHECK(t.e_eval_mu0(2) == Cbrt6(Rational(0), Rational(0), rat(7, 2592)));
}

TEST_CASE("denominators divide powers of z (z^3 -+ 24)") {
  for (Branch b : {Branch::plus, Branch::minus}) {
    const ExpansionTable& t = expansion_table(b, 3);
    Polynomial zp = Polynomial::variable();
    Polynomial factor({rat(b == Branch::plus ? -24 : 24), rat(0), rat(0), rat(1)});
    for (int k = 1; k <= 3; ++k) {
      Polynomial den = t.e_k(k).den();
      Polynomial q;
      while (den.degree() > 0 && den.divide_exact(zp, q)) den = q;
      while (den.degree() > 0 && den.divide_exact(factor, q)) den = q;
      CHECK(den.degree() == 0);
    }
  }
}

TEST_CASE("minus branch mirrors the plus branch with an alternating sign") {
  // e_k^-(z) = (-1)^k e_k^+(-z): the k-th ladder term sits at the x-power
  // (1-7k)/3, which is odd under the cube-root convention exactly when k is
  // even. Verified against the boundary-value solution on the minus side.
  const ExpansionTable& tp = expansion_table(Branch::plus, 3);
  const ExpansionTable& tm = expansion_table(Branch::minus, 3);
  for (int k = 1; k <= 3; ++k) {
    RationalFunction mirrored = tp.e_k(k).substitute_neg();
    if (k % 2 == 0) mirrored = -mirrored;
    CHECK(tm.e_k(k) == mirrored);
  }
}

TEST_CASE("decay |mu^2 e1| stays bounded by its value at mu = -10") {
  const ExpansionTable& t = expansion_table(Branch::plus, 1);
  double cap = std::fabs(-10.0 * -10.0 * static_cast<double>(t.e_eval(1, -10.0)));
  for (double mu : {-100.0, -1000.0, -10000.0}) {
    double v = std::fabs(mu * mu * static_cast<double>(t.e_eval(1, mu)));
    CHECK(v <= cap);
  }
}

TEST_CASE("split recursion agrees with the coefficient-wise recurrence") {
  const ExpansionTable& t = expansion_table(Branch::plus, 2);
  for (int k = 2; k <= 4; ++k) {
    for (int m = -pole_order(k); m <= 2; ++m) {
      auto rhs = recurrence_rhs(t, k, m, -1);   // full convolution
      // exterior coefficients carry the plus sign, interior ones the minus
      CHECK(matrices_equal(t.r(k).coeff(m), rhs, m >= 0));
    }
  }
  // With the inner sum capped at n_j + m instead, nonzero terms are dropped
  // from k = 3 on (the two readings agree at k = 2 where n_j = n_{k-j}).
  for (int m = -pole_order(2); m <= 2; ++m) {
    CHECK(matrices_equal(t.r(2).coeff(m), recurrence_rhs(t, 2, m, +1), m >= 0));
  }
  bool all_equal_k3 = true;
  for (int m = -pole_order(3); m <= 2; ++m)
    all_equal_k3 = all_equal_k3 &&
                   matrices_equal(t.r(3).coeff(m), recurrence_rhs(t, 3, m, +1), m >= 0);
  CHECK_FALSE(all_equal_k3);
}

TEST_CASE("Hamiltonian expansion coefficients") {
  HExpansionCoeffs h = h_expansion_coeffs(Branch::plus);
  RationalFunction s = s_of_z(Branch::plus);
  CHECK(h.h1_corr == RationalFunction(Polynomial::monomial(1, rat(4, 3))) * s * s);

  // H1 leading at mu=0: z/4 - z^4/384 = -(3/4) 6^{1/3}
  long double z0 = -2.0L * cbrtl(6.0L);
  CHECK(static_cast<double>(h.h1_lead.eval_fp<long double>(z0)) ==
        doctest::Approx(-0.75 * std::cbrt(6.0)).epsilon(1e-14));
  // H2 leading at mu=0: 9 z^2/40
  CHECK(static_cast<double>(h.h2_lead.eval_fp<long double>(z0)) ==
        doctest::Approx(9.0 * 4.0 * std::pow(6.0, 2.0 / 3.0) / 40.0).epsilon(1e-14));
  // H2 correction at mu=0 equals 3/z^2
  CHECK(static_cast<double>(h.h2_corr.eval_fp<long double>(z0)) ==
        doctest::Approx(3.0 / (4.0 * std::pow(6.0, 2.0 / 3.0))).epsilon(1e-14));
}

TEST_CASE("expansion table serializes deterministically") {
  const ExpansionTable& t = expansion_table(Branch::plus, 1);
  std::string a = to_json(t).dump(2);
  std::string b = to_json(expansion_table(Branch::plus, 1)).dump(2);
  CHECK(a == b);
  CHECK(a.find("\"branch\": \"plus\"") != std::string::npos);
  CHECK(a.find("truncation_orders") != std::string::npos);
}
