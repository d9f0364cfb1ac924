#include "pi2/asym_eval.hpp"

#include <cmath>
#include <stdexcept>

namespace pi2 {

long double cbrt_conv(long double x) { return cbrtl(x); }

long double pow_thirds(long double x, int p) {
  long double c = cbrt_conv(x);
  long double r = powl(fabsl(c), static_cast<long double>(p));
  if (c < 0 && (p & 1)) r = -r;
  return r;
}

double AsymptoticQuery::mu() const {
  if (x == 0) throw std::invalid_argument("asymptotic query at x = 0");
  return t * std::pow(std::fabs(x), -2.0 / 3.0);
}

namespace {

struct Frame {
  double mu;
  long double z;
  long double y13;   // |x|^{1/3}
  Branch branch;
};

Frame frame(const AsymptoticQuery& q) {
  if (std::fabs(q.x) < 1.0)
    throw std::invalid_argument(
        "asymptotic query requires |x| >= 1 (the solver covers small |x|)");
  Frame f;
  f.mu = q.mu();
  f.branch = q.branch();
  f.z = z_root(f.branch, f.mu, q.M);
  f.y13 = powl(fabsl(static_cast<long double>(q.x)), 1.0L / 3.0L);
  return f;
}

}  // namespace

AsymValue u_asym_full(const AsymptoticQuery& q) {
  Frame f = frame(q);
  AsymValue r;
  r.mu = f.mu;
  r.z = f.z;
  r.branch = f.branch;
  r.terms.push_back(f.z / 2 * f.y13);
  if (q.K > 0) {
    const ExpansionTable& tab = expansion_table(f.branch, q.K);
    long double y = fabsl(static_cast<long double>(q.x));
    for (int k = 1; k <= q.K; ++k) {
      long double ek = tab.e_k(k).eval_fp<long double>(f.z);
      r.terms.push_back(f.y13 * ek * powl(y, -7.0L * k / 3.0L));
    }
  }
  for (long double t : r.terms) r.value += t;
  return r;
}

long double u_asym(const AsymptoticQuery& q) { return u_asym_full(q).value; }

AsymValue ux_asym_full(const AsymptoticQuery& q) {
  Frame f = frame(q);
  AsymValue r;
  r.mu = f.mu;
  r.z = f.z;
  r.branch = f.branch;
  long double denom = f.z * f.z - 8.0L * f.mu;
  r.terms.push_back(-8.0L / denom / (f.y13 * f.y13));
  r.value = r.terms[0];
  return r;
}

long double ux_asym(const AsymptoticQuery& q) { return ux_asym_full(q).value; }

long double u_asym_derivative(const AsymptoticQuery& q) {
  Frame f = frame(q);
  long double y = fabsl(static_cast<long double>(q.x));
  long double val = -8.0L / (f.z * f.z - 8.0L * f.mu) / (f.y13 * f.y13);
  if (q.K > 0) {
    const ExpansionTable& tab = expansion_table(f.branch, q.K);
    // d/dx [e_k(mu) |x|^{(1-7k)/3}] with dmu/dx = -(2/3) mu sgn(x)/|x| and
    // de_k/dmu = e_k'(z) * 8z/(z^2 - 8mu).
    long double dz_dmu = 8.0L * f.z / (f.z * f.z - 8.0L * f.mu);
    long double sgn = q.x > 0 ? 1.0L : -1.0L;
    for (int k = 1; k <= q.K; ++k) {
      long double ek = tab.e_k(k).eval_fp<long double>(f.z);
      long double ekp = tab.e_k(k).derivative().eval_fp<long double>(f.z) * dz_dmu;
      long double p = (1.0L - 7.0L * k) / 3.0L;
      long double bracket = -(2.0L / 3.0L) * f.mu * ekp + p * ek;
      val += sgn * bracket * powl(y, p - 1.0L);
    }
  }
  return val;
}

AsymValue h1_asym_full(const AsymptoticQuery& q) {
  Frame f = frame(q);
  HExpansionCoeffs h = h_expansion_coeffs(f.branch);
  AsymValue r;
  r.mu = f.mu;
  r.z = f.z;
  r.branch = f.branch;
  long double y = fabsl(static_cast<long double>(q.x));
  r.terms.push_back(h.h1_lead.eval_fp<long double>(f.z) * powl(y, 4.0L / 3.0L));
  r.terms.push_back(h.h1_corr.eval_fp<long double>(f.z) / y);
  r.value = r.terms[0] + r.terms[1];
  return r;
}

long double h1_asym(const AsymptoticQuery& q) { return h1_asym_full(q).value; }

AsymValue h2_asym_full(const AsymptoticQuery& q) {
  Frame f = frame(q);
  HExpansionCoeffs h = h_expansion_coeffs(f.branch);
  AsymValue r;
  r.mu = f.mu;
  r.z = f.z;
  r.branch = f.branch;
  long double y = fabsl(static_cast<long double>(q.x));
  r.terms.push_back(h.h2_lead.eval_fp<long double>(f.z) * powl(y, 5.0L / 3.0L));
  r.terms.push_back(h.h2_corr.eval_fp<long double>(f.z) * powl(y, -2.0L / 3.0L));
  r.value = r.terms[0] + r.terms[1];
  return r;
}

long double h2_asym(const AsymptoticQuery& q) { return h2_asym_full(q).value; }

long double fixed_t_series_u(double x, double t) {
  if (x == 0) throw std::invalid_argument("fixed_t_series_u at x = 0");
  static const long double a = cbrtl(6.0L);
  long double tl = t;
  return -a * pow_thirds(x, 1) - 2.0L / a * tl * pow_thirds(x, -1) +
         2.0L * a / 27.0L * tl * tl * tl * pow_thirds(x, -5) +
         1.0L / (36.0L * static_cast<long double>(x) * x);
}

}  // namespace pi2
