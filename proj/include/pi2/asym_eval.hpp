#pragma once

#include <vector>

#include "pi2/expansion.hpp"

namespace pi2 {

// Cube-root convention: x^{1/3} = -|x|^{1/3} for x < 0, and every fractional
// power x^{p/3} is (x^{1/3})^p.
long double cbrt_conv(long double x);
long double pow_thirds(long double x, int p);

struct AsymptoticQuery {
  double x = 0;          // nonzero; |x| >= 1 for standalone use
  double t = 0;
  int K = 2;             // e_k ladder depth
  double M = kDefaultMuBound;

  Branch branch() const { return x > 0 ? Branch::plus : Branch::minus; }
  double mu() const;
};

struct AsymValue {
  long double value = 0;
  double mu = 0;
  long double z = 0;
  Branch branch = Branch::plus;
  std::vector<long double> terms;   // itemized contributions, leading first
};

AsymValue u_asym_full(const AsymptoticQuery& q);
long double u_asym(const AsymptoticQuery& q);

// Leading derivative term -8/(z^2 - 8 mu) |x|^{-2/3}; the next order is
// O((z^2-8mu)^{-2} |x|^{-3}) and is not evaluated.
AsymValue ux_asym_full(const AsymptoticQuery& q);
long double ux_asym(const AsymptoticQuery& q);

// Exact x-derivative of the K-term u_asym (leading term plus differentiated
// e_k corrections, including their mu-dependence). Used for boundary slopes,
// where the leading term alone would leave an O(|x|^{-3}) mismatch.
long double u_asym_derivative(const AsymptoticQuery& q);

AsymValue h1_asym_full(const AsymptoticQuery& q);
long double h1_asym(const AsymptoticQuery& q);
AsymValue h2_asym_full(const AsymptoticQuery& q);
long double h2_asym(const AsymptoticQuery& q);

// The four-term fixed-t expansion of u.
long double fixed_t_series_u(double x, double t);

}  // namespace pi2
