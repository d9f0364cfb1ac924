#include "pi2/integrals.hpp"

#include <cmath>
#include <sstream>

#include "pi2/asym_eval.hpp"

namespace pi2 {

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::u: return "u";
    case Quantity::H1: return "H1";
    case Quantity::u2: return "u2";
    case Quantity::xu: return "xu";
  }
  return "?";
}

Quantity quantity_from_name(const std::string& name) {
  if (name == "u") return Quantity::u;
  if (name == "H1" || name == "h1") return Quantity::H1;
  if (name == "u2") return Quantity::u2;
  if (name == "xu") return Quantity::xu;
  throw std::invalid_argument("unknown quantity: " + name);
}

int default_tail_order(Quantity q) { return q == Quantity::H1 ? 0 : 1; }

namespace {

// One counterterm: c * t^m * x^{p/3} under the cube-root convention.
struct PowerTerm {
  int p;        // x-exponent numerator (over 3)
  int m;        // t power
  Cbrt6 c;
};

struct CounterTerms {
  std::vector<PowerTerm> powers;
  int rational_sign = 0;   // coefficient of x/(36(x^2+1)); -1, 0 or +1
};

const CounterTerms& counterterms(Quantity q) {
  static const Cbrt6 al = Cbrt6::alpha();
  static const CounterTerms u{{{1, 0, al}, {-1, 1, al * al * Cbrt6(rat(1, 3))}}, 0};
  static const CounterTerms h1{{{4, 0, al * Cbrt6(rat(3, 4))},
                                {2, 1, al * al * Cbrt6(rat(1, 2))},
                                {0, 2, Cbrt6(rat(1))},
                                {-2, 3, al * Cbrt6(rat(1, 9))}},
                               +1};
  static const CounterTerms u2{{{2, 0, -(al * al)},
                                {0, 1, Cbrt6(rat(-4))},
                                {-2, 2, al * Cbrt6(rat(-2, 3))}},
                               0};
  // The t^3 x^{-2/3} term is x times the t^3 term of the u expansion; without
  // it the regularized integrand is not integrable for t != 0.
  static const CounterTerms xu{{{4, 0, al},
                                {2, 1, al * al * Cbrt6(rat(1, 3))},
                                {-2, 3, al * Cbrt6(rat(-2, 27))}},
                               -1};
  switch (q) {
    case Quantity::u: return u;
    case Quantity::H1: return h1;
    case Quantity::u2: return u2;
    case Quantity::xu: return xu;
  }
  throw std::logic_error("unreachable");
}

double tpow(double t, int m) {
  double r = 1;
  for (int i = 0; i < m; ++i) r *= t;
  return r;
}

// Integral of x^{p/3} over [a, b] with 0 <= a < b, p > -3.
double power_integral_pos(int p, double a, double b) {
  double e = (p + 3.0) / 3.0;
  return (std::pow(b, e) - std::pow(a, e)) * 3.0 / (p + 3.0);
}

// Integral of the counterterm part over [a, b] with a*b >= 0 (one side).
double counterterm_integral(Quantity q, double t, double a, double b) {
  const CounterTerms& ct = counterterms(q);
  double acc = 0;
  bool neg = (a < 0 || b < 0);
  double lo = neg ? -b : a, hi = neg ? -a : b;
  for (const auto& term : ct.powers) {
    double v = power_integral_pos(term.p, lo, hi);
    if (neg && (term.p % 2 != 0)) v = -v;   // odd power under the convention
    acc += static_cast<double>(term.c.to_ld()) * tpow(t, term.m) * v;
  }
  if (ct.rational_sign != 0) {
    // int x/(36(x^2+1)) = log(x^2+1)/72, even antiderivative of an odd term
    double v = (std::log(hi * hi + 1.0) - std::log(lo * lo + 1.0)) / 72.0;
    if (neg) v = -v;
    acc += ct.rational_sign * v;
  }
  return acc;
}

}  // namespace

double counterterm_closed_form(Quantity q, double t, double L) {
  return counterterm_integral(q, t, -L, 0) + counterterm_integral(q, t, 0, L);
}

double counterterm_value_at(Quantity q, double t, double x) {
  const CounterTerms& ct = counterterms(q);
  double acc = 0;
  for (const auto& term : ct.powers)
    acc += static_cast<double>(term.c.to_ld()) * tpow(t, term.m) *
           static_cast<double>(pow_thirds(x, term.p));
  if (ct.rational_sign != 0) acc += ct.rational_sign * x / (36.0 * (x * x + 1.0));
  return acc;
}

namespace {

constexpr int kMuOrder = 8;
constexpr int kJCap = 15;

XtSeries counterterm_xt_series(Quantity q, Branch b) {
  const CounterTerms& ct = counterterms(q);
  bool minus = (b == Branch::minus);
  XtSeries s(kJCap);
  for (const auto& term : ct.powers) {
    Cbrt6 c = term.c;
    if (minus && (term.p % 2 != 0)) c = -c;
    s.add_term(-term.p, term.m, c);
  }
  if (ct.rational_sign != 0) {
    // lattice part 1/(36x); the exact remainder is handled separately
    Rational r = rat(ct.rational_sign, 36);
    s.add_term(3, 0, Cbrt6(minus ? -r : r));
  }
  return s;
}

XtSeries quantity_xt_series(Quantity q, Branch b, int K) {
  switch (q) {
    case Quantity::u:
      return u_xt_series(b, K, kMuOrder, kJCap);
    case Quantity::u2: {
      XtSeries u = u_xt_series(b, K, kMuOrder, kJCap + 1);
      return (u * u).truncated(kJCap);
    }
    case Quantity::xu:
      return u_xt_series(b, K, kMuOrder, kJCap + 3).mul_x(side_of(b)).truncated(kJCap);
    case Quantity::H1:
      if (K == 0) return h1_xt_series_formula(b, kMuOrder, kJCap);
      return h1_xt_series_from_u(b, K, kMuOrder, kJCap);
  }
  throw std::logic_error("unreachable");
}

// Exact tail of the rational counterterm beyond its 1/(36x) lattice part:
// int_L^inf [x/(36(x^2+1)) - 1/(36x)] dx = -(1/72) log(1 + L^{-2}).
double rational_remainder_tail(Quantity q, Branch b, double L) {
  int s = counterterms(q).rational_sign;
  if (s == 0) return 0;
  double v = -std::log1p(1.0 / (L * L)) / 72.0;
  return (b == Branch::plus ? s : -s) * v;
}

}  // namespace

double tail_correction(Quantity q, double t, double L, int K) {
  if (K < 0) throw std::invalid_argument("tail order must be >= 0");
  if (q != Quantity::H1 && K < 1) throw std::invalid_argument("tail order must be >= 1");
  if (K > 4)
    throw std::invalid_argument("tail order beyond the available e_k table (K <= 4)");
  double acc = 0;
  for (Branch b : {Branch::plus, Branch::minus}) {
    XtSeries integrand = quantity_xt_series(q, b, K) + counterterm_xt_series(q, b);
    acc += static_cast<double>(
        integrand.tail_integral(static_cast<long double>(L), t));
    acc += rational_remainder_tail(q, b, L);
  }
  return acc;
}

namespace {

// Composite Simpson over the node-aligned window [x[i0], x[i1]] of the
// regularized integrand: solution part pointwise everywhere, counterterm
// part pointwise outside |x| <= 1 and in closed form inside that band. The
// band (not just the two cells at x = 0) is needed because the fractional
// powers have unbounded fourth derivatives toward the origin, which would
// otherwise spoil the O(h^4) quadrature.
constexpr double kClosedFormBand = 1.0;

double core_quadrature(Quantity q, double t, const SolutionGrid& sol, int i0, int i1,
                       const std::vector<double>* solution_part) {
  const double h = sol.x[1] - sol.x[0];
  double acc = 0;
  auto ctv = [&](int i) { return counterterm_value_at(q, t, sol.x[i]); };
  auto sv = [&](int i) { return solution_part ? (*solution_part)[i] : 0.0; };
  for (int i = i0; i + 2 <= i1; i += 2) {
    bool near_zero = std::min(std::fabs(sol.x[i]), std::fabs(sol.x[i + 2])) <
                     kClosedFormBand - 0.5 * h;
    double simpson_sol = h / 3.0 * (sv(i) + 4.0 * sv(i + 1) + sv(i + 2));
    if (near_zero) {
      acc += simpson_sol + counterterm_integral(q, t, sol.x[i], sol.x[i + 2]);
    } else {
      acc += simpson_sol +
             h / 3.0 * (ctv(i) + 4.0 * ctv(i + 1) + ctv(i + 2));
    }
  }
  return acc;
}

std::vector<double> solution_part(Quantity q, const SolutionGrid& sol) {
  std::vector<double> v(sol.n);
  for (int i = 0; i < sol.n; ++i) {
    switch (q) {
      case Quantity::u: v[i] = sol.u[i]; break;
      case Quantity::u2: v[i] = sol.u[i] * sol.u[i]; break;
      case Quantity::xu: v[i] = sol.x[i] * sol.u[i]; break;
      case Quantity::H1: v[i] = sol.H1[i]; break;
    }
  }
  return v;
}

struct WindowTotal {
  double core = 0, tail = 0, total = 0;
};

WindowTotal window_total(Quantity q, double t, const SolutionGrid& sol,
                         const std::vector<double>& sp, int K, int half_pairs) {
  const int c = (sol.n - 1) / 2;
  const int i0 = c - 2 * half_pairs, i1 = c + 2 * half_pairs;
  WindowTotal w;
  w.core = core_quadrature(q, t, sol, i0, i1, &sp);
  double Lw = sol.x[i1];
  w.tail = tail_correction(q, t, Lw, K);
  w.total = w.core + w.tail;
  return w;
}

}  // namespace

double counterterm_quadrature(Quantity q, double t, double L, int n) {
  SolutionGrid g;
  g.n = n;
  g.x.resize(n);
  const double h = 2.0 * L / (n - 1);
  for (int i = 0; i < n; ++i) g.x[i] = -L + h * i;
  return core_quadrature(q, t, g, 0, n - 1, nullptr);
}

IntegralReport total_integral(Quantity q, double t, const SolutionGrid& sol, int K) {
  if (std::fabs(sol.t - t) > 1e-12) {
    std::ostringstream os;
    os << "solution grid is at t = " << sol.t << ", requested t = " << t;
    throw std::invalid_argument(os.str());
  }
  if (sol.n % 2 == 0 || (sol.n - 1) % 4 != 0)
    throw std::invalid_argument("total_integral needs a symmetric grid with 4 | n-1");
  IntegralReport rep;
  rep.quantity = q;
  rep.t = t;
  rep.L = sol.L;
  rep.tail_order = K;

  std::vector<double> sp = solution_part(q, sol);
  const int half_pairs = (sol.n - 1) / 4;
  WindowTotal full = window_total(q, t, sol, sp, K, half_pairs);
  rep.core_value = full.core;
  rep.tail_correction = full.tail;
  rep.total = full.total;
  rep.counterterm_value = counterterm_closed_form(q, t, sol.L);

  if (q == Quantity::H1) {
    // O(L^{-1/3}) budget fitted from the same solve restricted to L/2.
    WindowTotal half = window_total(q, t, sol, sp, K, half_pairs / 2);
    double Lh = sol.L / 2.0;
    double cfit = (half.total - full.total) /
                  (std::pow(Lh, -1.0 / 3.0) - std::pow(sol.L, -1.0 / 3.0));
    rep.error_estimate = std::fabs(cfit) * std::pow(sol.L, -1.0 / 3.0) + kH1ErrorFloor;
  } else {
    double next = tail_correction(q, t, sol.L, K + 1);
    double cur = tail_correction(q, t, sol.L, K);
    rep.error_estimate = std::fabs(next - cur) + kTailErrorFloor;
  }
  return rep;
}

IntegralReport total_integral(Quantity q, double t, const SolutionGrid& sol) {
  return total_integral(q, t, sol, default_tail_order(q));
}

}  // namespace pi2
