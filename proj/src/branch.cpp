#include "pi2/branch.hpp"

#include <cmath>
#include <sstream>

namespace pi2 {

MuDiagnostics mu_admissible(double mu, double M) {
  MuDiagnostics d;
  // z^3 + p z + q with p = -24 mu, q = +-48: discriminant -4 p^3 - 27 q^2.
  double p = -24.0 * mu;
  d.discriminant = -4.0 * p * p * p - 27.0 * 48.0 * 48.0;
  if (!(mu <= M)) {
    d.reason = "mu exceeds the uniformity bound M";
    return d;
  }
  if (!(d.discriminant < 0)) {
    d.reason = "cubic has three real roots (elliptic regime)";
    return d;
  }
  d.admissible = true;
  d.reason = "ok";
  return d;
}

namespace {

void require_admissible(double mu, double M) {
  MuDiagnostics d = mu_admissible(mu, M);
  if (!d.admissible) {
    std::ostringstream os;
    os << "mu = " << mu << " not admissible (M = " << M << "): " << d.reason;
    throw AdmissibilityError(os.str());
  }
}

// Safeguarded Newton for z^3 - 24 mu z + 48 on (-480^{1/3}, 0).
long double solve_plus_cubic(long double mu) {
  long double lo = -powl(480.0L, 1.0L / 3.0L), hi = 0.0L;
  auto f = [&](long double z) { return (z * z - 24.0L * mu) * z + 48.0L; };
  long double z = -2.0L * cbrtl(6.0L);
  if (mu < -2.0L) z = 2.0L / mu;          // dominant balance -24 mu z + 48 = 0
  if (!(z > lo && z < hi)) z = 0.5L * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    long double fz = f(z);
    if (fz > 0) hi = z; else lo = z;
    long double df = 3.0L * z * z - 24.0L * mu;
    long double step = fz / df;
    long double zn = z - step;
    if (!(zn > lo && zn < hi)) zn = 0.5L * (lo + hi);   // bisection fallback
    long double scale = fmaxl(1.0L, fabsl(zn * zn * zn));
    if (fabsl(f(zn)) <= 1e-19L * scale && fabsl(zn - z) <= 1e-18L * fabsl(zn) + 1e-30L) {
      return zn;
    }
    z = zn;
  }
  return z;
}

}  // namespace

long double z_plus(double mu, double M) {
  require_admissible(mu, M);
  return solve_plus_cubic(static_cast<long double>(mu));
}

long double z_minus(double mu, double M) { return -z_plus(mu, M); }

long double z_root(Branch b, double mu, double M) {
  return b == Branch::plus ? z_plus(mu, M) : z_minus(mu, M);
}

BigFloat z_plus_big(double mu, int bits, double M) {
  require_admissible(mu, M);
  if (bits <= 0) bits = precision_bits();
  int work = bits + 32;
  BigFloat z(0, work), m(mu, work);
  mpf_set_d(z.get_mpf_t(), static_cast<double>(solve_plus_cubic(mu)));
  for (int i = 0; i < 8; ++i) {
    BigFloat f = (z * z - 24 * m) * z + 48;
    BigFloat df = 3 * z * z - 24 * m;
    z -= f / df;
  }
  BigFloat out(0, bits);
  out = z;
  return out;
}

std::vector<ZSeriesTerm> z_series_small_mu(Branch b, int order) {
  if (order < 0 || order > 8)
    throw std::invalid_argument("z series order must be in [0, 8]");
  // Solve the plus cubic as a power series over Q(6^{1/3}) by Newton
  // iteration; each pass doubles the correct order.
  const int n = order + 1;
  std::vector<Cbrt6> z(n);
  z[0] = Cbrt6(Rational(0), rat(-2));    // -2 * 6^{1/3}
  auto mul = [&](const std::vector<Cbrt6>& a, const std::vector<Cbrt6>& c) {
    std::vector<Cbrt6> r(n);
    for (int i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      for (int j = 0; i + j < n; ++j) r[i + j] += a[i] * c[j];
    }
    return r;
  };
  auto inv = [&](const std::vector<Cbrt6>& a) {
    std::vector<Cbrt6> r(n);
    r[0] = a[0].inverse();
    for (int m = 1; m < n; ++m) {
      Cbrt6 acc;
      for (int i = 1; i <= m; ++i) acc += a[i] * r[m - i];
      r[m] = -(r[0] * acc);
    }
    return r;
  };
  for (int pass = 0; (1 << pass) <= 2 * n; ++pass) {
    std::vector<Cbrt6> z2 = mul(z, z);
    std::vector<Cbrt6> f = mul(z2, z);          // z^3
    for (int i = 0; i + 1 < n; ++i) f[i + 1] -= Cbrt6(rat(24)) * z[i];  // -24 mu z
    f[0] += Cbrt6(rat(48));
    std::vector<Cbrt6> df = z2;                 // 3 z^2 - 24 mu
    for (auto& x : df) x = Cbrt6(rat(3)) * x;
    if (n > 1) df[1] -= Cbrt6(rat(24));
    std::vector<Cbrt6> corr = mul(f, inv(df));
    for (int i = 0; i < n; ++i) z[i] -= corr[i];
  }
  std::vector<ZSeriesTerm> out(n);
  for (int i = 0; i < n; ++i) {
    Cbrt6 v = (b == Branch::plus) ? z[i] : -z[i];
    ZSeriesTerm t;
    if (!v.is_monomial(&t.coef, &t.sixth_power))
      throw std::logic_error("z series coefficient is not a 6^{k/3} monomial");
    t.value = v;
    out[i] = t;
  }
  return out;
}

}  // namespace pi2
