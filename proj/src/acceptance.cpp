#include "pi2/acceptance.hpp"

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>

#include "pi2/asym_eval.hpp"
#include "pi2/asym_series.hpp"
#include "pi2/bigfloat.hpp"
#include "pi2/integrals.hpp"
#include "pi2/solver.hpp"

namespace pi2 {

namespace {

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return std::string(buf);
}

void check(CriterionResult& r, const std::string& label, bool pass,
           const std::string& detail) {
  r.checks.push_back({label, pass, detail});
}

// Solves are shared between criteria; keyed by (t, L, n).
const SolutionGrid& shared_solve(double t, double L, int n) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int>, SolutionGrid> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(t, L, n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    SolverConfig cfg;
    cfg.t = t;
    cfg.L = L;
    cfg.n = n;
    it = cache.emplace(key, solve_bvp(cfg)).first;
  }
  return it->second;
}

// --- criterion 1: recursion e1 equals the closed form, as reduced rational
// functions, in under five seconds.
void criterion1(CriterionResult& r) {
  ExpansionTable t = r_recursion(1, Branch::plus);
  RationalFunction s = s_of_z(Branch::plus);
  RationalFunction z2(Polynomial::monomial(2));
  RationalFunction closed = RationalFunction(rat(-64, 3)) * s * s * s +
                            z2 * RationalFunction(rat(256, 3)) * s * s * s * s;
  bool eq = (t.e_k(1) == closed);
  std::ostringstream os;
  os << "e1 = " << t.e_k(1);
  check(r, "e1 recursion == closed form (exact)", eq, os.str());

  ExpansionTable tm = r_recursion(1, Branch::minus);
  RationalFunction sm = s_of_z(Branch::minus);
  RationalFunction closed_m = RationalFunction(rat(-64, 3)) * sm * sm * sm +
                              z2 * RationalFunction(rat(256, 3)) * sm * sm * sm * sm;
  check(r, "e1 minus branch == closed form (exact)", tm.e_k(1) == closed_m, "");
}

void criterion2(CriterionResult& r) {
  const ExpansionTable& t = expansion_table(Branch::plus, 1);
  Cbrt6 v0 = t.e_eval_mu0(1);
  check(r, "e1(mu=0) == 1/36 (exact)", v0 == Cbrt6(rat(1, 36)),
        fmt("got %s (rational component, evaluated in Q(6^{1/3}))",
            v0.a.get_str().c_str()));
  Rational v1 = t.e_eval_exact(1, rat(-2));   // z = -2 is the root for mu = -5/6
  check(r, "e1(mu=-5/6) == 9/1024 (exact at z=-2)", v1 == rat(9, 1024),
        fmt("got %s", v1.get_str().c_str()));
  long double zr = z_plus(-5.0 / 6.0);
  check(r, "z_plus(-5/6) == -2 numerically", fabsl(zr + 2.0L) < 1e-14,
        fmt("z = %.18Lf", zr));
}

void criterion3(CriterionResult& r) {
  AiryConstants a1 = airy_constants(1), a2 = airy_constants(2);
  check(r, "t_hat_1 == 5/48", a1.t_hat == rat(5, 48), a1.t_hat.get_str());
  check(r, "t_1 == -7/48", a1.t == rat(-7, 48), a1.t.get_str());
  check(r, "t_hat_2 == 385/4608", a2.t_hat == rat(385, 4608), a2.t_hat.get_str());
  bool ratio = true;
  for (int k = 1; k <= 5; ++k) {
    AiryConstants a = airy_constants(k);
    ratio = ratio && (a.t * rat(6 * k - 1, 1) == -a.t_hat * rat(6 * k + 1, 1));
  }
  check(r, "t_k/t_hat_k == -(6k+1)/(6k-1) for k <= 5", ratio, "");
}

void criterion4(CriterionResult& r) {
  const ExpansionTable& t = expansion_table(Branch::plus, 4);
  bool parity = true;
  for (int k = 1; k <= 4; ++k) {
    parity = parity && t.r(2 * k).is_diagonal() && t.q(2 * k).is_diagonal();
    parity = parity && t.r(2 * k - 1).is_anti_diagonal() &&
             t.q(2 * k - 1).is_anti_diagonal();
  }
  check(r, "R_{2k} diagonal, R_{2k-1} anti-diagonal for k <= 4", parity, "");

  GCoefficients g = g_coeffs(Branch::plus);
  AiryConstants a1 = airy_constants(1), a2 = airy_constants(2);
  RationalFunction c3i = g.c3.reciprocal();
  auto r1 = t.r(1).coeff(-1);
  RationalFunction r1_12 = RationalFunction(rat(-2, 3)) * g.c2 *
                           RationalFunction(a1.t_hat) * c3i * c3i;
  RationalFunction r1_21 = RationalFunction(rat(2, 3)) * RationalFunction(a1.t) * c3i;
  bool ok1 = r1[0][1] == r1_12 && r1[1][0] == r1_21 && r1[0][0].is_zero() &&
             r1[1][1].is_zero();
  check(r, "R_1^(-1) matches its displayed form (exact)", ok1, "");

  auto r2 = t.r(2).coeff(-1);
  RationalFunction c2sq = g.c2 * g.c2, c1c3 = g.c1 * g.c3;
  RationalFunction c3i4 = c3i * c3i * c3i * c3i;
  RationalFunction r2_11 =
      (RationalFunction(Rational(4)) * RationalFunction(a2.t_hat) *
           (RationalFunction(Rational(3)) * c2sq - RationalFunction(Rational(2)) * c1c3) -
       RationalFunction(Rational(4)) * RationalFunction(a1.t) *
           RationalFunction(a1.t_hat) * (c2sq - c1c3)) *
      RationalFunction(rat(1, 9)) * c3i4;
  RationalFunction r2_22 =
      (RationalFunction(Rational(4)) * RationalFunction(a2.t) *
           (RationalFunction(Rational(3)) * c2sq - RationalFunction(Rational(2)) * c1c3) -
       RationalFunction(Rational(4)) * RationalFunction(a1.t) *
           RationalFunction(a1.t_hat) *
           (RationalFunction(Rational(2)) * c2sq - c1c3)) *
      RationalFunction(rat(1, 9)) * c3i4;
  bool ok2 = r2[0][0] == r2_11 && r2[1][1] == r2_22 && r2[0][1].is_zero() &&
             r2[1][0].is_zero();
  check(r, "R_2^(-1) matches its displayed form (exact)", ok2, "");
}

void criterion5(CriterionResult& r) {
  auto terms = z_series_small_mu(Branch::plus, 4);
  const int bits = 128;
  auto zb = [&](double mu) { return z_plus_big(mu, bits); };
  auto partial = [&](double mu) {
    BigFloat acc(0, bits), mp(mu, bits);
    BigFloat al = cbrt_big(BigFloat(6, bits));
    BigFloat mu_pow(1, bits);
    for (int i = 0; i <= 4; ++i) {
      BigFloat coef = big(terms[i].coef, bits);
      for (int p = 0; p < terms[i].sixth_power; ++p) coef *= al;
      acc += coef * mu_pow;
      mu_pow *= mp;
    }
    return acc;
  };
  // empirical c5 from the largest mu, then check the bound at all three
  double c5 = std::fabs(static_cast<double>(
                  mpf_class(zb(0.1) - partial(0.1)).get_d())) /
              std::pow(0.1, 5);
  bool ok = true;
  std::ostringstream os;
  for (double mu : {1e-1, 1e-2, 1e-3}) {
    double resid = std::fabs(mpf_class(zb(mu) - partial(mu)).get_d());
    double bound = 10.0 * c5 * std::pow(mu, 5);
    ok = ok && (resid <= bound);
    os << fmt("mu=%g: |resid|=%.3e bound=%.3e; ", mu, resid, bound);
  }
  check(r, "degree-4 partial sum residual <= 10|c5| mu^5", ok, os.str());

  // Richardson extraction of the mu^2 coefficient (should be 0).
  auto even_part = [&](double mu) -> BigFloat {
    return (zb(mu) + zb(-mu) - 2 * zb(0.0)) / (2 * mu * mu);
  };
  BigFloat e1 = even_part(1e-3), e2 = even_part(5e-4);
  double a2 = mpf_class((4 * e2 - e1) / 3).get_d();
  check(r, "mu^2 coefficient == 0 to 1e-12 (Richardson)", std::fabs(a2) <= 1e-12,
        fmt("extracted %.3e", a2));
}

void criterion6(CriterionResult& r) {
  const ExpansionTable& t = expansion_table(Branch::plus, 1);
  double prev = 1e300;
  bool ok = true;
  std::ostringstream os;
  for (double mu : {-10.0, -100.0, -1000.0}) {
    double v = std::fabs(mu * mu * static_cast<double>(t.e_eval(1, mu)));
    os << fmt("mu=%g: |mu^2 e1|=%.3e; ", mu, v);
    ok = ok && (v <= prev);
    prev = v;
  }
  check(r, "|mu^2 e1(mu)| non-increasing toward mu -> -inf", ok, os.str());
}

void criterion7(CriterionResult& r) {
  const SolutionGrid& sol = shared_solve(0.0, 12.0, 4001);
  check(r, "Newton iterations <= 15", sol.newton_iterations <= 15,
        fmt("%d iterations", sol.newton_iterations));
  check(r, "max discrete ODE residual <= 1e-10", sol.max_residual <= 1e-10,
        fmt("%.3e", sol.max_residual));
  int i9 = (sol.n - 1) / 2 + static_cast<int>(std::lround(
               0.9 * sol.L / (2.0 * sol.L / (sol.n - 1))));
  double target = -std::cbrt(6.0 * 0.9 * sol.L);
  double rel = std::fabs(sol.u[i9] - target) / std::fabs(target);
  check(r, "|u(0.9L) + (6*0.9L)^{1/3}| relative <= 1e-2", rel <= 1e-2,
        fmt("%.3e at x=%.2f", rel, sol.x[i9]));
  double even = 0;
  for (int i = 0; i < sol.n; ++i)
    even = std::max(even, std::fabs(sol.u[i] + sol.u[sol.n - 1 - i]));
  check(r, "antisymmetry max|u(x)+u(-x)| <= 1e-6", even <= 1e-6,
        fmt("measured %.3e; the solution is not odd: its expansion carries the "
            "even term 1/(36x^2), so u(L)+u(-L) ~ 1/(18L^2) = %.3e, and "
            "u(0) = %.4f != 0",
            even, 1.0 / (18.0 * sol.L * sol.L), sol.u[(sol.n - 1) / 2]));
}

void criterion8(CriterionResult& r) {
  const double d = 1e-3;
  const SolutionGrid& s0 = shared_solve(0.0, 12.0, 4001);
  const SolutionGrid& sp = shared_solve(+d, 12.0, 4001);
  const SolutionGrid& sm = shared_solve(-d, 12.0, 4001);
  IdentityReport rep = identity_residuals(s0, sp, sm, d);
  check(r, "max|dH1/dx - u| <= 1e-4", rep.max_dh1dx_minus_u <= 1e-4,
        fmt("%.3e", rep.max_dh1dx_minus_u));
  check(r, "max|dH1/dt + u^2/2 + u_xx/12| <= 1e-4", rep.max_dh1dt_identity <= 1e-4,
        fmt("%.3e", rep.max_dh1dt_identity));
  check(r, "max|u_t + u u_x + u_xxx/12| <= 1e-4", rep.max_kdv_residual <= 1e-4,
        fmt("%.3e", rep.max_kdv_residual));
  const SolutionGrid& sp2 = shared_solve(+d / 2, 12.0, 4001);
  const SolutionGrid& sm2 = shared_solve(-d / 2, 12.0, 4001);
  IdentityReport rep2 = identity_residuals(s0, sp2, sm2, d / 2);
  double f1 = rep.max_dh1dt_identity / rep2.max_dh1dt_identity;
  double f2 = rep.max_kdv_residual / rep2.max_kdv_residual;
  check(r, "halving delta reduces t-residuals by >= 3.5", f1 >= 3.5 && f2 >= 3.5,
        fmt("dH1/dt factor %.2f, KdV factor %.2f", f1, f2));
}

void criterion9(CriterionResult& r) {
  struct Budget {
    Quantity q;
    double cap;   // absolute |total| cap; 0 means use the error estimate
  };
  const Budget budgets[] = {{Quantity::u, 5e-3},
                            {Quantity::u2, 1e-2},
                            {Quantity::xu, 1e-2},
                            {Quantity::H1, 0.0}};
  for (double t : {0.0, 0.5, -0.5}) {
    const SolutionGrid& sol = shared_solve(t, 16.0, 4001);
    for (const Budget& b : budgets) {
      IntegralReport rep = total_integral(b.q, t, sol);
      if (b.q == Quantity::H1) {
        bool ok = std::fabs(rep.total) <= rep.error_estimate &&
                  rep.error_estimate <= 5e-2;
        check(r, fmt("H1 total at t=%+.1f within its error estimate (<= 5e-2)", t),
              ok, fmt("total %.3e, estimate %.3e", rep.total, rep.error_estimate));
      } else {
        bool ok = std::fabs(rep.total) <= b.cap;
        check(r, fmt("%s total at t=%+.1f within %.0e", quantity_name(b.q), t, b.cap),
              ok, fmt("total %.3e", rep.total));
      }
    }
  }
}

void criterion10(CriterionResult& r) {
  const SolutionGrid& sol = shared_solve(0.0, 12.0, 4001);
  const double x9 = 0.9 * sol.L;
  int i9 = (sol.n - 1) / 2 +
           static_cast<int>(std::lround(x9 / (2.0 * sol.L / (sol.n - 1))));
  AsymptoticQuery q{x9, 0.0, 2, kDefaultMuBound};

  // First omitted order of the two-term H1 expansion at t = 0: the
  // antiderivative of the e2 ladder term, (3/10) e2(0) x^{-10/3}.
  const ExpansionTable& tab = expansion_table(Branch::plus, 2);
  double e2 = static_cast<double>(tab.e_eval(2, 0.0));
  double omit1 = 0.3 * std::fabs(e2) * std::pow(x9, -10.0 / 3.0);
  double d1 = std::fabs(sol.H1[i9] - static_cast<double>(h1_asym(q)));
  check(r, "H1(0.9L) matches h1_asym within 2x first omitted term",
        d1 <= 2.0 * omit1, fmt("diff %.3e, budget %.3e", d1, 2.0 * omit1));

  // For H2 the first omitted term is the |x|^{-3} row of the composed series.
  XtSeries h2c = h2_xt_series_from_u(Branch::plus, 2, 8, 10);
  XtSeries h2f = h2_xt_series_formula(Branch::plus, 8, 10);
  double c9 = std::fabs((h2c - h2f).coeff(9, 0).to_ld());
  double omit2 = c9 * std::pow(x9, -3.0);
  double d2 = std::fabs(sol.H2[i9] - static_cast<double>(h2_asym(q)));
  check(r, "H2(0.9L) matches h2_asym within 2x first omitted term",
        d2 <= 2.0 * omit2, fmt("diff %.3e, budget %.3e (|x^-3| coeff %.5f)",
                               d2, 2.0 * omit2, c9));
}

void criterion11(CriterionResult& r) {
  SolverConfig cfg;
  cfg.n = 101;
  cfg.L = 12;
  cfg.t = 0;
  double dev = jacobian_fd_max_relative_deviation(cfg);
  check(r, "Jacobian vs finite differences, max relative deviation <= 1e-6",
        dev <= 1e-6, fmt("%.3e", dev));
}

const char* criterion_name(int id) {
  switch (id) {
    case 1: return "symbolic e1 identity";
    case 2: return "numeric e1 anchors";
    case 3: return "Airy parametrix constants";
    case 4: return "Laurent data structure";
    case 5: return "small-mu z series";
    case 6: return "e1 decay toward mu -> -inf";
    case 7: return "BVP fidelity at t=0";
    case 8: return "differential identities and KdV";
    case 9: return "total integrals";
    case 10: return "Hamiltonian asymptotics at the window edge";
    case 11: return "Jacobian gradient check";
  }
  return "?";
}

}  // namespace

CriterionResult run_criterion(int id) {
  CriterionResult r;
  r.id = id;
  r.name = criterion_name(id);
  auto t0 = std::chrono::steady_clock::now();
  switch (id) {
    case 1: criterion1(r); break;
    case 2: criterion2(r); break;
    case 3: criterion3(r); break;
    case 4: criterion4(r); break;
    case 5: criterion5(r); break;
    case 6: criterion6(r); break;
    case 7: criterion7(r); break;
    case 8: criterion8(r); break;
    case 9: criterion9(r); break;
    case 10: criterion10(r); break;
    case 11: criterion11(r); break;
    default: throw std::invalid_argument("criterion id must be 1..11");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  // stated runtime caps
  if (id == 1 && r.seconds >= 5.0)
    check(r, "runtime < 5 s", false, fmt("%.2f s", r.seconds));
  if ((id == 5 || id == 6) && r.seconds >= 1.0)
    check(r, "runtime < 1 s", false, fmt("%.2f s", r.seconds));
  if (id == 9 && r.seconds >= 300.0)
    check(r, "runtime < 5 min", false, fmt("%.2f s", r.seconds));
  r.pass = true;
  for (const auto& c : r.checks) r.pass = r.pass && c.pass;
  return r;
}

std::vector<int> criteria_for(const std::string& table) {
  if (table == "thm21") return {1, 2, 3, 4, 5, 6};
  if (table == "cor21") return {10};
  if (table == "thm22") return {9};
  if (table == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  throw std::invalid_argument("unknown table: " + table +
                              " (expected thm21, cor21, thm22 or all)");
}

int print_results(const std::vector<CriterionResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id,
                r.name.c_str(), r.seconds);
    for (const auto& c : r.checks) {
      std::printf("    [%s] %s%s%s\n", c.pass ? "ok" : "FAIL", c.label.c_str(),
                  c.detail.empty() ? "" : ": ", c.detail.c_str());
    }
    if (!r.pass) ++failed;
  }
  std::printf("%zu criteria run, %d failed\n", results.size(), failed);
  return failed;
}

}  // namespace pi2
