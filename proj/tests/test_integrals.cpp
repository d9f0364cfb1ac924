#include <cmath>

#include "doctest.h"
#include "pi2/asym_series.hpp"
#include "pi2/integrals.hpp"

using namespace pi2;

namespace {

const SolutionGrid& grid_at(double t, double L) {
  static std::map<std::pair<double, double>, SolutionGrid> cache;
  auto key = std::make_pair(t, L);
  auto it = cache.find(key);
  if (it == cache.end()) {
    SolverConfig cfg;
    cfg.t = t;
    cfg.L = L;
    cfg.n = 4001;
    it = cache.emplace(key, solve_bvp(cfg)).first;
  }
  return it->second;
}

}  // namespace

TEST_CASE("counterterm closed forms on the worked examples") {
  // u: both counterterms odd under the convention
  CHECK(counterterm_closed_form(Quantity::u, 0.7, 9.0) == doctest::Approx(0.0).epsilon(1e-15));
  // H1 at t=0: 2 * (3/4) 6^{1/3} * (3/7) L^{7/3}
  double L = 11.0;
  double expect = 2.0 * 0.75 * std::cbrt(6.0) * (3.0 / 7.0) * std::pow(L, 7.0 / 3.0);
  CHECK(counterterm_closed_form(Quantity::H1, 0.0, L) == doctest::Approx(expect).epsilon(1e-14));
  // the x/(36(x^2+1)) part integrates to zero on symmetric windows: changing
  // t only adds even powers, so compare t-dependence explicitly
  double with_t = counterterm_closed_form(Quantity::H1, 0.5, L);
  double even_terms = 2.0 * (3.0 / std::cbrt(6.0)) * 0.5 * (3.0 / 5.0) * std::pow(L, 5.0 / 3.0) +
                      2.0 * 0.25 * L + 2.0 * (std::cbrt(6.0) / 9.0) * 0.125 * 3.0 * std::cbrt(L);
  CHECK(with_t - counterterm_closed_form(Quantity::H1, 0.0, L) ==
        doctest::Approx(even_terms).epsilon(1e-12));
}

TEST_CASE("quadrature of the counterterms alone matches the closed forms") {
  for (Quantity q : {Quantity::u, Quantity::H1, Quantity::u2, Quantity::xu}) {
    for (double t : {0.0, 0.5}) {
      double quad = counterterm_quadrature(q, t, 16.0, 4001);
      double closed = counterterm_closed_form(q, t, 16.0);
      double scale = std::max(1.0, std::fabs(counterterm_closed_form(q, 1.0, 16.0)));
      CHECK(std::fabs(quad - closed) / scale <= 1e-10);
    }
  }
}

TEST_CASE("tail corrections: exact anchors") {
  // u, t=0, K=1: both sides of x^{-2}/36 integrate to 1/(18L)
  for (double L : {8.0, 16.0}) {
    CHECK(tail_correction(Quantity::u, 0.0, L, 1) ==
          doctest::Approx(1.0 / (18.0 * L)).epsilon(1e-12));
  }
  // the odd t^3 x^{-5/3} term of the z-family cancels between the two sides
  double L = 12.0;
  {
    XtSeries zp = u_xt_series(Branch::plus, 0, 8, 12);
    XtSeries zm = u_xt_series(Branch::minus, 0, 8, 12);
    CHECK_FALSE(zp.coeff(5, 3).is_zero());
    CHECK((zp.coeff(5, 3) + zm.coeff(5, 3)).is_zero());
  }
  double t0 = tail_correction(Quantity::u, 0.0, L, 1);
  double tp = tail_correction(Quantity::u, 0.8, L, 1);
  CHECK(std::fabs(tp - t0) < 0.3 * std::fabs(t0));

  CHECK_THROWS_AS(tail_correction(Quantity::u, 0.0, L, 0), std::invalid_argument);
  CHECK_THROWS_AS(tail_correction(Quantity::u, 0.0, L, 9), std::invalid_argument);
}

TEST_CASE("total integrals vanish within budget at t = 0") {
  const SolutionGrid& sol = grid_at(0.0, 16.0);
  IntegralReport ru = total_integral(Quantity::u, 0.0, sol);
  CHECK(std::fabs(ru.total) <= 5e-3);
  CHECK(std::fabs(ru.total) <= ru.error_estimate);
  CHECK(ru.counterterm_value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ru.tail_correction == doctest::Approx(1.0 / (18.0 * 16.0)).epsilon(1e-10));

  IntegralReport r2 = total_integral(Quantity::u2, 0.0, sol);
  CHECK(std::fabs(r2.total) <= 1e-2);
  IntegralReport rx = total_integral(Quantity::xu, 0.0, sol);
  CHECK(std::fabs(rx.total) <= 1e-2);
  IntegralReport rh = total_integral(Quantity::H1, 0.0, sol);
  CHECK(std::fabs(rh.total) <= rh.error_estimate);
  CHECK(rh.error_estimate <= 5e-2);
}

TEST_CASE("totals stay within their error estimates across t") {
  for (double t : {-0.5, 0.0, 0.5}) {
    const SolutionGrid& sol = grid_at(t, 16.0);
    for (Quantity q : {Quantity::u, Quantity::H1, Quantity::u2, Quantity::xu}) {
      IntegralReport rep = total_integral(q, t, sol);
      CHECK(std::fabs(rep.total) <= rep.error_estimate);
    }
  }
}

TEST_CASE("window-growth trend") {
  for (Quantity q : {Quantity::u, Quantity::H1, Quantity::u2, Quantity::xu}) {
    IntegralReport r8 = total_integral(q, 0.0, grid_at(0.0, 8.0));
    IntegralReport r16 = total_integral(q, 0.0, grid_at(0.0, 16.0));
    CHECK(std::fabs(r16.total) < std::fabs(r8.total) + 2.0 * r16.error_estimate);
  }
}

TEST_CASE("d/dt of the H1 core reflects the u^2 identity") {
  // d/dt int_{-L}^{L} (H1 + cts_H1) = -1/2 int (u^2 + cts_u2... ) - [u_x]/12,
  // where the counterterm t-derivative is exactly -1/2 of the u2 counterterm.
  const double L = 12.0, d = 1e-3;
  auto core = [&](Quantity q, double t) {
    return total_integral(q, t, grid_at(t, L)).core_value;
  };
  double lhs = (core(Quantity::H1, d) - core(Quantity::H1, -d)) / (2 * d);
  const SolutionGrid& s0 = grid_at(0.0, L);
  double rhs = -0.5 * core(Quantity::u2, 0.0) -
               (s0.ux[s0.n - 1] - s0.ux[0]) / 12.0;
  CHECK(std::fabs(lhs - rhs) <= 2e-6);
}

TEST_CASE("mismatched t between report and solution is rejected") {
  const SolutionGrid& sol = grid_at(0.0, 8.0);
  CHECK_THROWS_AS(total_integral(Quantity::u, 0.3, sol), std::invalid_argument);
}

TEST_CASE("counterterm pointwise values agree with the definitions") {
  double x = 5.0, t = 0.4;
  double expect_u = std::cbrt(6.0 * x) + 2.0 / std::cbrt(6.0) * t / std::cbrt(x);
  CHECK(counterterm_value_at(Quantity::u, t, x) == doctest::Approx(expect_u).epsilon(1e-14));
  double expect_xu = std::cbrt(6.0) * std::pow(x, 4.0 / 3.0) +
                     2.0 / std::cbrt(6.0) * t * std::pow(x, 2.0 / 3.0) -
                     2.0 * std::cbrt(6.0) / 27.0 * t * t * t * std::pow(x, -2.0 / 3.0) -
                     x / (36.0 * (x * x + 1.0));
  CHECK(counterterm_value_at(Quantity::xu, t, x) == doctest::Approx(expect_xu).epsilon(1e-14));
}
