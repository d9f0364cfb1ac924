#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "pi2/asym_eval.hpp"
#include "pi2/asym_series.hpp"
#include "pi2/solver.hpp"

using namespace pi2;

namespace {

const SolutionGrid& base_solution() {
  static SolutionGrid sol = [] {
    SolverConfig cfg;
    cfg.t = 0;
    cfg.L = 12;
    cfg.n = 4001;
    return solve_bvp(cfg);
  }();
  return sol;
}

int node_at(const SolutionGrid& sol, double x) {
  double h = sol.x[1] - sol.x[0];
  return static_cast<int>(std::lround((x - sol.x[0]) / h));
}

}  // namespace

TEST_CASE("t=0 solve: boundary behavior and regularity at the origin") {
  const SolutionGrid& sol = base_solution();
  CHECK(sol.max_residual <= 1e-10);
  CHECK(sol.newton_iterations <= 15);
  CHECK(sol.u.front() * sol.u.back() < 0.0);

  int i9 = node_at(sol, 0.9 * sol.L);
  double lead = -std::cbrt(6.0 * 0.9 * sol.L);
  CHECK(std::fabs(sol.u[i9] - lead) / std::fabs(lead) <= 1e-2);

  double u0 = sol.u[(sol.n - 1) / 2];
  CHECK(std::isfinite(u0));
  CHECK(std::fabs(u0) < 10.0);
}

TEST_CASE("grid halving shows second-order convergence of the box scheme") {
  auto solve_raw = [](int n) {
    SolverConfig cfg;
    cfg.t = 0;
    cfg.L = 8;
    cfg.n = n;
    cfg.richardson_levels = 0;
    return solve_bvp(cfg);
  };
  SolutionGrid a = solve_raw(501), b = solve_raw(1001), c = solve_raw(2001);
  double e_ab = 0, e_bc = 0;
  for (int i = 0; i < a.n; ++i) {
    e_ab = std::max(e_ab, std::fabs(a.u[i] - b.u[2 * i]));
    e_bc = std::max(e_bc, std::fabs(b.u[2 * i] - c.u[4 * i]));
  }
  CHECK(e_ab / e_bc == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("hamiltonians_on_grid vanishes on the zero columns") {
  SolutionGrid g;
  g.t = 0;
  g.L = 1;
  g.n = 11;
  g.x.resize(g.n);
  for (int i = 0; i < g.n; ++i) g.x[i] = -1.0 + 0.2 * i;
  g.u.assign(g.n, 0.0);
  g.ux.assign(g.n, 0.0);
  g.uxx.assign(g.n, 0.0);
  g.uxxx.assign(g.n, 0.0);
  g.residual.assign(g.n, 0.0);
  hamiltonians_on_grid(g, 0.0);
  for (int i = 0; i < g.n; ++i) {
    CHECK(g.H1[i] == 0.0);
    CHECK(g.H2[i] == 0.0);
  }
}

TEST_CASE("Hamiltonian columns match the asymptotic formulas at the window edge") {
  const SolutionGrid& sol = base_solution();
  int i9 = node_at(sol, 0.9 * sol.L);
  AsymptoticQuery q{sol.x[i9], 0.0, 2};
  double h1 = static_cast<double>(h1_asym(q));
  double h2 = static_cast<double>(h2_asym(q));
  // error budgets: the first omitted terms of the two expansions
  const ExpansionTable& tab = expansion_table(Branch::plus, 2);
  double omit1 = 0.3 * std::fabs(static_cast<double>(tab.e_eval(2, 0.0))) *
                 std::pow(sol.x[i9], -10.0 / 3.0);
  CHECK(std::fabs(sol.H1[i9] - h1) <= 2 * omit1);
  double omit2 = (41.0 / 2592.0) * std::pow(sol.x[i9], -3.0);
  CHECK(std::fabs(sol.H2[i9] - h2) <= 2 * omit2);
  CHECK(std::fabs(sol.H2[i9] - h2) / std::fabs(h2) <= 1e-2);
}

TEST_CASE("the solution is close to odd but not odd: the even part follows "
          "the 1/(36x^2) expansion term") {
  const SolutionGrid& sol = base_solution();
  double boundary_even = sol.u[0] + sol.u[sol.n - 1];
  // u_asym(L) + u_asym(-L) = 2 e_1(0)/L^2 + O(L^{-13/3})
  CHECK(boundary_even ==
        doctest::Approx(1.0 / (18.0 * sol.L * sol.L)).epsilon(1e-3));
  double even_max = 0;
  for (int i = 0; i < sol.n; ++i)
    even_max = std::max(even_max, std::fabs(sol.u[i] + sol.u[sol.n - 1 - i]));
  CHECK(even_max > 1e-2);    // genuinely not antisymmetric
  CHECK(even_max < 2.0);
}

TEST_CASE("identity residuals: budgets, delta scaling, and the asymptotic "
          "columns as a negative control") {
  SolverConfig cfg;
  cfg.t = 0;
  cfg.L = 12;
  cfg.n = 4001;
  const SolutionGrid& s0 = base_solution();
  double d = 1e-3;
  cfg.t = d;
  SolutionGrid sp = solve_bvp(cfg);
  cfg.t = -d;
  SolutionGrid sm = solve_bvp(cfg);
  IdentityReport rep = identity_residuals(s0, sp, sm, d);
  CHECK(rep.max_dh1dx_minus_u <= 1e-4);
  CHECK(rep.max_dh1dt_identity <= 1e-4);
  CHECK(rep.max_kdv_residual <= 1e-4);

  cfg.t = d / 2;
  SolutionGrid sp2 = solve_bvp(cfg);
  cfg.t = -d / 2;
  SolutionGrid sm2 = solve_bvp(cfg);
  IdentityReport rep2 = identity_residuals(s0, sp2, sm2, d / 2);
  CHECK(rep.max_dh1dt_identity / rep2.max_dh1dt_identity >= 3.5);
  CHECK(rep.max_kdv_residual / rep2.max_kdv_residual >= 3.5);

  // mismatched grids are rejected
  SolverConfig small = cfg;
  small.n = 2001;
  small.t = d;
  SolutionGrid odd = solve_bvp(small);
  CHECK_THROWS_AS(identity_residuals(s0, odd, sm, d), std::invalid_argument);

  // feeding asymptotic columns instead of solver output makes dH1/dx - u
  // visibly worse at moderate |x| (the expansion is not an exact solution)
  SolutionGrid fake = s0;
  for (int i = 0; i < fake.n; ++i) {
    if (std::fabs(fake.x[i]) < 1.0) continue;
    AsymptoticQuery q{fake.x[i], 0.0, 2};
    fake.u[i] = static_cast<double>(u_asym(q));
    fake.ux[i] = static_cast<double>(u_asym_derivative(q));
  }
  hamiltonians_on_grid(fake, 0.0);
  auto dh1dx_resid = [&](const SolutionGrid& g, double xlo, double xhi) {
    double h = g.x[1] - g.x[0], best = 0;
    for (int i = 2; i < g.n - 2; ++i) {
      if (g.x[i] < xlo || g.x[i] > xhi) continue;
      double d1 = (-g.H1[i + 2] + 8 * g.H1[i + 1] - 8 * g.H1[i - 1] + g.H1[i - 2]) /
                  (12 * h);
      best = std::max(best, std::fabs(d1 - g.u[i]));
    }
    return best;
  };
  CHECK(dh1dx_resid(fake, 1.5, 3.0) > 10.0 * dh1dx_resid(s0, 1.5, 3.0));
}

TEST_CASE("error-band conformance over the outer third of the window") {
  // deeper asymptotic data narrows the gap to the solved solution
  const SolutionGrid& sol = base_solution();
  double emax[3] = {0, 0, 0};
  for (int i = 0; i < sol.n; ++i) {
    if (sol.x[i] < 2.0 * sol.L / 3.0 || sol.x[i] > 0.95 * sol.L) continue;
    for (int K = 0; K <= 2; ++K) {
      AsymptoticQuery q{sol.x[i], 0.0, K};
      emax[K] = std::max(emax[K],
                         std::fabs(sol.u[i] - static_cast<double>(u_asym(q))));
    }
  }
  CHECK(emax[1] < emax[0]);
  CHECK(emax[2] < emax[1]);
}

TEST_CASE("self-convergence in the window size at the origin") {
  auto u_at_zero = [](double L) {
    SolverConfig cfg;
    cfg.t = 0;
    cfg.L = L;
    cfg.n = 2001;
    SolutionGrid s = solve_bvp(cfg);
    return s.u[(s.n - 1) / 2];
  };
  double ref = u_at_zero(20.0);
  double e8 = std::fabs(u_at_zero(8.0) - ref);
  double e12 = std::fabs(u_at_zero(12.0) - ref);
  double e16 = std::fabs(u_at_zero(16.0) - ref);
  // decreasing up to the solver noise floor
  const double floor = 1e-9;
  CHECK(e12 <= e8 + floor);
  CHECK(e16 <= e12 + floor);
}

TEST_CASE("continuation reaches t = +-0.5 and respects admissibility") {
  SolverConfig cfg;
  cfg.t = 0.5;
  cfg.L = 12;
  cfg.n = 2001;
  SolutionGrid s = solve_bvp(cfg);
  CHECK(s.max_residual <= cfg.newton_tol);

  cfg.t = 3.0;   // boundary mu = 3/12^{2/3} = 0.572 > M
  CHECK_THROWS_AS(solve_bvp(cfg), AdmissibilityError);

  cfg.t = 0;
  cfg.n = 400;   // must be odd
  CHECK_THROWS_AS(solve_bvp(cfg), std::invalid_argument);
}

TEST_CASE("Jacobian matches finite differences") {
  SolverConfig cfg;
  cfg.n = 101;
  cfg.L = 12;
  cfg.t = 0;
  CHECK(jacobian_fd_max_relative_deviation(cfg) <= 1e-6);
}

TEST_CASE("CSV round trip is bit-faithful") {
  SolverConfig cfg;
  cfg.t = 0;
  cfg.L = 8;
  cfg.n = 801;
  SolutionGrid s = solve_bvp(cfg);
  std::string path = "test_roundtrip.csv";
  write_csv(s, path);
  SolutionGrid r = read_csv(path);
  REQUIRE(r.n == s.n);
  for (int i = 0; i < s.n; ++i) {
    CHECK(r.x[i] == s.x[i]);
    CHECK(r.u[i] == s.u[i]);
    CHECK(r.uxxx[i] == s.uxxx[i]);
    CHECK(r.H2[i] == s.H2[i]);
  }
  std::remove(path.c_str());
}
